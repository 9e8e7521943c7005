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

// Low-dimensional hierarchies: one 2-D hierarchy per attribute pair.

#ifndef LDPRANGE_LHIO_H_
#define LDPRANGE_LHIO_H_

#include <memory>
#include <vector>

#include "ldprange/approach.h"
#include "ldprange/dataset.h"
#include "ldprange/hierarchy.h"
#include "ldprange/range_estimation.h"

namespace ldprange {

// Frequencies of every (l1, l2) level of a 2-D hierarchy over (first, second).
// Table (l1, l2) has b^l1 rows (first attribute) and b^l2 columns.
struct Hierarchy2D {
  int first = 0;
  int second = 1;
  Hierarchy1D hierarchy{2, 2};
  std::vector<std::vector<double>> tables;  // index l1 * (h + 1) + l2

  int levels() const { return hierarchy.height() + 1; }
  std::vector<double>& table(int l1, int l2) { return tables[static_cast<size_t>(l1) * levels() + l2]; }
  const std::vector<double>& table(int l1, int l2) const {
    return tables[static_cast<size_t>(l1) * levels() + l2];
  }
  double& at(int l1, int l2, int64_t row, int64_t col) {
    return table(l1, l2)[static_cast<size_t>(row * hierarchy.NodesAt(l2) + col)];
  }
  double at(int l1, int l2, int64_t row, int64_t col) const {
    return table(l1, l2)[static_cast<size_t>(row * hierarchy.NodesAt(l2) + col)];
  }

  // Zero-filled hierarchy of the right shape.
  static Hierarchy2D Empty(int first, int second, const Hierarchy1D& hierarchy);
  // Sum over the minimal covers of both ranges.
  double RangeSum(const Interval& first_range, const Interval& second_range) const;
};

// Constrained inference on a single b-ary tree given level by level
// (levels[l] holds b^l values): bottom-up weighted averaging followed by
// top-down mean consistency. Afterwards each parent equals the sum of its
// children.
void TreeConsistency(std::vector<std::vector<double>>& levels, int branching);

// Runs TreeConsistency on every tree along one axis (0 = first attribute).
void AxisConsistency(Hierarchy2D& h, int axis);

// Both axis orders, averaged. The two per-axis operators act on different
// tensor factors, so the orders agree up to rounding.
void HierarchyConsistency(Hierarchy2D& h);

// Largest |parent - sum of its b children| along either axis.
double MaxHierarchyResidual(const Hierarchy2D& h);

// Replaces every coarser table with sums of the finest one.
void RebuildFromFinest(Hierarchy2D& h);

struct LhioOptions {
  int branching = 4;
  int postprocess_rounds = 3;
  LambdaOptions lambda;
  int threads = 1;
};

class LhioApproach : public RangeApproach {
 public:
  static std::unique_ptr<LhioApproach> Build(const Dataset& dataset, double epsilon, uint64_t seed,
                                             const LhioOptions& options = {});

  std::string name() const override { return "LHIO"; }
  double Answer(const RangeQuery& query) const override;
  int64_t num_reports() const override { return num_reports_; }
  double privacy_ratio() const override;

  // AttributePairs order.
  const std::vector<Hierarchy2D>& hierarchies() const { return hierarchies_; }
  double AnswerPair(int a, const Interval& range_a, int b, const Interval& range_b) const;

 private:
  int num_attributes_ = 0;
  int domain_size_ = 0;
  double epsilon_ = 1;
  LhioOptions options_;
  std::vector<Hierarchy2D> hierarchies_;
  int64_t num_reports_ = 0;
};

}  // namespace ldprange

#endif  // LDPRANGE_LHIO_H_
