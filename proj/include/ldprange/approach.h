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

#ifndef LDPRANGE_APPROACH_H_
#define LDPRANGE_APPROACH_H_

#include <cstdint>
#include <string>

#include "ldprange/query.h"

namespace ldprange {

// A range-query estimator built from one round of perturbed user reports.
class RangeApproach {
 public:
  virtual ~RangeApproach() = default;

  virtual std::string name() const = 0;
  // Estimated fraction of records satisfying the query. Safe to call from
  // several threads at once.
  virtual double Answer(const RangeQuery& query) const = 0;
  // Perturbed reports consumed while building; one per user.
  virtual int64_t num_reports() const = 0;
  // Largest worst-case likelihood ratio of the mechanisms the users ran.
  // Must not exceed e^epsilon.
  virtual double privacy_ratio() const = 0;
};

}  // namespace ldprange

#endif  // LDPRANGE_APPROACH_H_
