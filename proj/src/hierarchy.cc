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

#include "ldprange/hierarchy.h"

#include <limits>
#include <stdexcept>

#include "ldprange/grid.h"
#include "ldprange/parallel.h"
#include "ldprange/random.h"

namespace ldprange {

namespace {

constexpr uint64_t kHioStream = 0x410;
constexpr uint64_t kHioAssign = 0x411;

void DecomposeInto(const Hierarchy1D& h, const Interval& range, Hierarchy1D::Node node,
                   std::vector<Hierarchy1D::Node>& out) {
  const Interval span = h.NodeInterval(node);
  if (range.lo <= span.lo && span.hi <= range.hi) {
    out.push_back(node);
    return;
  }
  if (OverlapLength(span, range) == 0) return;
  for (int i = 0; i < h.branching(); ++i) {
    DecomposeInto(h, range, {node.level + 1, node.index * h.branching() + i}, out);
  }
}

}  // namespace

int64_t PadToPowerOf(int64_t x, int base) {
  if (base < 2) throw std::invalid_argument("hierarchy branching factor must be at least 2");
  int64_t p = 1;
  while (p < x) p *= base;
  return p;
}

Hierarchy1D::Hierarchy1D(int branching, int domain_size) : branching_(branching), domain_size_(domain_size) {
  if (branching < 2) throw std::invalid_argument("hierarchy branching factor must be at least 2");
  if (PadToPowerOf(domain_size, branching) != domain_size || domain_size < 1) {
    throw std::invalid_argument("hierarchy domain " + std::to_string(domain_size) + " is not a power of " +
                                std::to_string(branching));
  }
  height_ = 0;
  for (int64_t p = 1; p < domain_size; p *= branching) ++height_;
}

int64_t Hierarchy1D::NodesAt(int level) const {
  if (level < 0 || level > height_) throw std::out_of_range("hierarchy level out of range");
  int64_t n = 1;
  for (int i = 0; i < level; ++i) n *= branching_;
  return n;
}

Interval Hierarchy1D::NodeInterval(const Node& node) const {
  const int64_t w = WidthAt(node.level);
  return {static_cast<int>(node.index * w + 1), static_cast<int>((node.index + 1) * w)};
}

int64_t Hierarchy1D::NodeOf(int value, int level) const { return (value - 1) / WidthAt(level); }

std::vector<Hierarchy1D::Node> Hierarchy1D::Decompose(const Interval& range) const {
  if (range.lo < 1 || range.hi > domain_size_ || range.lo > range.hi) {
    throw std::invalid_argument("interval outside the hierarchy domain");
  }
  std::vector<Node> out;
  DecomposeInto(*this, range, {0, 0}, out);
  return out;
}

HioApproach::HioApproach(int num_attributes, int domain_size, double epsilon, Hierarchy1D hierarchy)
    : num_attributes_(num_attributes), domain_size_(domain_size), epsilon_(epsilon), hierarchy_(hierarchy) {}

std::unique_ptr<HioApproach> HioApproach::Build(const Dataset& dataset, double epsilon, uint64_t seed,
                                                const HioOptions& options) {
  const int d = dataset.num_attributes();
  const int64_t padded = PadToPowerOf(dataset.domain_size(), options.branching);
  if (padded > std::numeric_limits<int>::max()) throw std::invalid_argument("HIO domain too large");
  Hierarchy1D hier(options.branching, static_cast<int>(padded));
  const int levels = hier.height() + 1;

  // (h+1)^d groups; the finest group's domain is c^d.
  int64_t num_groups = 1;
  double finest = 1;
  for (int t = 0; t < d; ++t) {
    num_groups *= levels;
    finest *= static_cast<double>(padded);
  }
  if (finest > 9.0e18) throw std::invalid_argument("HIO joint domain exceeds 64-bit values");
  if (num_groups > dataset.num_records()) {
    throw std::invalid_argument("HIO needs " + std::to_string(num_groups) + " groups but only " +
                                std::to_string(dataset.num_records()) + " users");
  }

  std::unique_ptr<HioApproach> hio(new HioApproach(d, dataset.domain_size(), epsilon, hier));
  const auto members =
      AssignGroups(dataset.num_records(), static_cast<int>(num_groups), DeriveSeed(seed, {kHioAssign})).Members();
  hio->groups_.resize(num_groups);

  ParallelFor(0, num_groups, options.threads, [&](int64_t g) {
    std::vector<int> level(d);
    int64_t rest = g;
    int64_t domain = 1;
    for (int t = 0; t < d; ++t) {
      level[t] = static_cast<int>(rest % levels);
      rest /= levels;
      domain *= hier.NodesAt(level[t]);
    }
    Group& group = hio->groups_[g];
    group.params = OlhParams::Create(domain, epsilon);
    const uint64_t stream = DeriveSeed(seed, {kHioStream, static_cast<uint64_t>(g)});
    for (int64_t user : members[g]) {
      int64_t value = 0;
      int64_t radix = 1;
      for (int t = 0; t < d; ++t) {
        value += hier.NodeOf(dataset.value(user, t), level[t]) * radix;
        radix *= hier.NodesAt(level[t]);
      }
      const uint64_t hash_seed = stream ^ static_cast<uint64_t>(user);
      SplitMix64 rng(Mix64(hash_seed));
      group.reports.push_back(OlhPerturb(value + 1, group.params, hash_seed, rng));
    }
  });
  for (const auto& g : hio->groups_) hio->num_reports_ += static_cast<int64_t>(g.reports.size());
  return hio;
}

double HioApproach::privacy_ratio() const { return OlhParams::Create(2, epsilon_).PrivacyRatio(); }

double HioApproach::IntervalEstimate(const std::vector<Hierarchy1D::Node>& nodes) const {
  if (static_cast<int>(nodes.size()) != num_attributes_) {
    throw std::invalid_argument("HIO interval needs one node per attribute");
  }
  const int levels = hierarchy_.height() + 1;
  int64_t group = 0, value = 0, group_radix = 1, value_radix = 1;
  for (int t = 0; t < num_attributes_; ++t) {
    group += nodes[t].level * group_radix;
    group_radix *= levels;
    value += nodes[t].index * value_radix;
    value_radix *= hierarchy_.NodesAt(nodes[t].level);
  }
  const auto key = std::make_pair(group, value);
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const Group& g = groups_[group];
  const double est = OlhEstimateValue(g.reports, g.params, value + 1);
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(key, est);
  return est;
}

double HioApproach::Answer(const RangeQuery& query) const {
  query.Validate(num_attributes_, domain_size_);
  // Every attribute gets a cover; unqueried ones are the root.
  std::vector<std::vector<Hierarchy1D::Node>> covers(num_attributes_, {Hierarchy1D::Node{0, 0}});
  for (const auto& p : query.predicates()) covers[p.attribute] = hierarchy_.Decompose(p.interval);

  std::vector<size_t> pos(num_attributes_, 0);
  std::vector<Hierarchy1D::Node> nodes(num_attributes_);
  double answer = 0;
  while (true) {
    for (int t = 0; t < num_attributes_; ++t) nodes[t] = covers[t][pos[t]];
    answer += IntervalEstimate(nodes);
    int t = 0;
    while (t < num_attributes_ && ++pos[t] == covers[t].size()) pos[t++] = 0;
    if (t == num_attributes_) break;
  }
  return answer;
}

}  // namespace ldprange
