// Copyright 2026 The ldprange Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Per-attribute Square Wave distributions combined under an independence
// assumption, and the data-independent uniform guess.

#ifndef LDPRANGE_MSW_H_
#define LDPRANGE_MSW_H_

#include <memory>
#include <vector>

#include "ldprange/approach.h"
#include "ldprange/dataset.h"
#include "ldprange/square_wave.h"

namespace ldprange {

struct MswOptions {
  SwEmOptions em;
  int threads = 1;
};

class MswApproach : public RangeApproach {
 public:
  static std::unique_ptr<MswApproach> Build(const Dataset& dataset, double epsilon, uint64_t seed,
                                            const MswOptions& options = {});
  // From already reconstructed per-attribute distributions (index v - 1).
  MswApproach(std::vector<std::vector<double>> marginals, double epsilon, int64_t num_reports);

  std::string name() const override { return "MSW"; }
  double Answer(const RangeQuery& query) const override;
  int64_t num_reports() const override { return num_reports_; }
  double privacy_ratio() const override;

  const std::vector<std::vector<double>>& marginals() const { return marginals_; }

 private:
  std::vector<std::vector<double>> marginals_;
  double epsilon_;
  int64_t num_reports_;
};

// Product of (r - l + 1) / c over the predicates. Touches no data.
class UniApproach : public RangeApproach {
 public:
  UniApproach(int num_attributes, int domain_size)
      : num_attributes_(num_attributes), domain_size_(domain_size) {}

  std::string name() const override { return "Uni"; }
  double Answer(const RangeQuery& query) const override;
  int64_t num_reports() const override { return 0; }
  double privacy_ratio() const override { return 1.0; }

 private:
  int num_attributes_;
  int domain_size_;
};

}  // namespace ldprange

#endif  // LDPRANGE_MSW_H_
