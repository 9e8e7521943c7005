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

// b-ary interval hierarchies and the multi-dimensional hierarchy baseline.

#ifndef LDPRANGE_HIERARCHY_H_
#define LDPRANGE_HIERARCHY_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "ldprange/approach.h"
#include "ldprange/dataset.h"
#include "ldprange/frequency_oracle.h"
#include "ldprange/query.h"

namespace ldprange {

// Smallest power of `base` that is >= x.
int64_t PadToPowerOf(int64_t x, int base);

// Level l (0 = root) splits [1, c] into b^l equal intervals; leaves sit at
// level h = log_b c and are single values.
class Hierarchy1D {
 public:
  struct Node {
    int level = 0;
    int64_t index = 0;  // 0-based within the level
    bool operator==(const Node&) const = default;
  };

  // c must be a power of b; b >= 2.
  Hierarchy1D(int branching, int domain_size);

  int branching() const { return branching_; }
  int domain_size() const { return domain_size_; }
  int height() const { return height_; }
  int64_t NodesAt(int level) const;
  int64_t WidthAt(int level) const { return domain_size_ / NodesAt(level); }
  Interval NodeInterval(const Node& node) const;
  // Node of `level` containing value v.
  int64_t NodeOf(int value, int level) const;

  // Minimal set of disjoint nodes whose union is `range`, in ascending order.
  std::vector<Node> Decompose(const Interval& range) const;

 private:
  int branching_;
  int domain_size_;
  int height_;
};

struct HioOptions {
  int branching = 4;
  int threads = 1;
};

// One group per d-dimensional level (l_1..l_d); each member reports the
// d-dimensional interval holding its record at that level through OLH.
// Estimates of individual intervals are computed on demand and memoized,
// because the finest levels are far too large to aggregate in full.
class HioApproach : public RangeApproach {
 public:
  static std::unique_ptr<HioApproach> Build(const Dataset& dataset, double epsilon, uint64_t seed,
                                            const HioOptions& options = {});

  std::string name() const override { return "HIO"; }
  double Answer(const RangeQuery& query) const override;
  int64_t num_reports() const override { return num_reports_; }
  double privacy_ratio() const override;

  const Hierarchy1D& hierarchy() const { return hierarchy_; }
  int64_t num_groups() const { return static_cast<int64_t>(groups_.size()); }
  // Noisy frequency of one d-dimensional interval, given a node per attribute.
  double IntervalEstimate(const std::vector<Hierarchy1D::Node>& nodes) const;

 private:
  struct Group {
    OlhParams params;
    std::vector<OlhReport> reports;
  };

  HioApproach(int num_attributes, int domain_size, double epsilon, Hierarchy1D hierarchy);

  int num_attributes_;
  int domain_size_;
  double epsilon_;
  Hierarchy1D hierarchy_;
  std::vector<Group> groups_;  // mixed radix over levels, attribute 0 fastest
  int64_t num_reports_ = 0;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<int64_t, int64_t>, double> cache_;  // (group, value)
};

}  // namespace ldprange

#endif  // LDPRANGE_HIERARCHY_H_
