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

#include "ldprange/lhio.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ldprange/grid.h"
#include "ldprange/parallel.h"
#include "ldprange/postprocess.h"
#include "ldprange/random.h"

namespace ldprange {

namespace {

constexpr uint64_t kLhioStream = 0x1410;
constexpr uint64_t kLhioAssign = 0x1411;

double IntPow(int base, int exp) {
  double p = 1;
  for (int i = 0; i < exp; ++i) p *= base;
  return p;
}

}  // namespace

Hierarchy2D Hierarchy2D::Empty(int first, int second, const Hierarchy1D& hierarchy) {
  Hierarchy2D h{.first = first, .second = second, .hierarchy = hierarchy};
  const int levels = hierarchy.height() + 1;
  h.tables.resize(static_cast<size_t>(levels) * levels);
  for (int l1 = 0; l1 < levels; ++l1) {
    for (int l2 = 0; l2 < levels; ++l2) {
      h.table(l1, l2).assign(static_cast<size_t>(hierarchy.NodesAt(l1) * hierarchy.NodesAt(l2)), 0.0);
    }
  }
  return h;
}

double Hierarchy2D::RangeSum(const Interval& first_range, const Interval& second_range) const {
  double sum = 0;
  const auto rows = hierarchy.Decompose(first_range);
  const auto cols = hierarchy.Decompose(second_range);
  for (const auto& r : rows) {
    for (const auto& k : cols) sum += at(r.level, k.level, r.index, k.index);
  }
  return sum;
}

void TreeConsistency(std::vector<std::vector<double>>& levels, int branching) {
  const int h = static_cast<int>(levels.size()) - 1;
  if (h < 1) return;
  const int b = branching;
  // Bottom-up; a node at level l has height i = h - l + 1 (leaves are 1).
  std::vector<std::vector<double>> z = levels;
  for (int l = h - 1; l >= 0; --l) {
    const double bi = IntPow(b, h - l + 1);
    const double own = (bi - bi / b) / (bi - 1);
    const double kids = (bi / b - 1) / (bi - 1);
    for (size_t v = 0; v < z[l].size(); ++v) {
      double child_sum = 0;
      for (int i = 0; i < b; ++i) child_sum += z[l + 1][v * b + i];
      z[l][v] = own * levels[l][v] + kids * child_sum;
    }
  }
  // Top-down: split each parent's surplus evenly among its children.
  levels[0] = z[0];
  for (int l = 0; l < h; ++l) {
    for (size_t v = 0; v < levels[l].size(); ++v) {
      double child_sum = 0;
      for (int i = 0; i < b; ++i) child_sum += z[l + 1][v * b + i];
      const double shift = (levels[l][v] - child_sum) / b;
      for (int i = 0; i < b; ++i) levels[l + 1][v * b + i] = z[l + 1][v * b + i] + shift;
    }
  }
}

void AxisConsistency(Hierarchy2D& h, int axis) {
  const int levels = h.levels();
  const int b = h.hierarchy.branching();
  // For each level and node of the other axis there is one tree along `axis`.
  for (int other_level = 0; other_level < levels; ++other_level) {
    const int64_t other_nodes = h.hierarchy.NodesAt(other_level);
    for (int64_t o = 0; o < other_nodes; ++o) {
      std::vector<std::vector<double>> tree(levels);
      for (int l = 0; l < levels; ++l) {
        tree[l].resize(static_cast<size_t>(h.hierarchy.NodesAt(l)));
        for (int64_t v = 0; v < h.hierarchy.NodesAt(l); ++v) {
          tree[l][v] = axis == 0 ? h.at(l, other_level, v, o) : h.at(other_level, l, o, v);
        }
      }
      TreeConsistency(tree, b);
      for (int l = 0; l < levels; ++l) {
        for (int64_t v = 0; v < h.hierarchy.NodesAt(l); ++v) {
          (axis == 0 ? h.at(l, other_level, v, o) : h.at(other_level, l, o, v)) = tree[l][v];
        }
      }
    }
  }
}

void HierarchyConsistency(Hierarchy2D& h) {
  Hierarchy2D other = h;
  AxisConsistency(h, 0);
  AxisConsistency(h, 1);
  AxisConsistency(other, 1);
  AxisConsistency(other, 0);
  for (size_t t = 0; t < h.tables.size(); ++t) {
    for (size_t i = 0; i < h.tables[t].size(); ++i) h.tables[t][i] = 0.5 * (h.tables[t][i] + other.tables[t][i]);
  }
}

double MaxHierarchyResidual(const Hierarchy2D& h) {
  const int levels = h.levels();
  const int b = h.hierarchy.branching();
  double worst = 0;
  for (int l1 = 0; l1 < levels; ++l1) {
    for (int l2 = 0; l2 < levels; ++l2) {
      for (int64_t r = 0; r < h.hierarchy.NodesAt(l1); ++r) {
        for (int64_t k = 0; k < h.hierarchy.NodesAt(l2); ++k) {
          const double parent = h.at(l1, l2, r, k);
          if (l1 + 1 < levels) {
            double s = 0;
            for (int i = 0; i < b; ++i) s += h.at(l1 + 1, l2, r * b + i, k);
            worst = std::max(worst, std::abs(parent - s));
          }
          if (l2 + 1 < levels) {
            double s = 0;
            for (int i = 0; i < b; ++i) s += h.at(l1, l2 + 1, r, k * b + i);
            worst = std::max(worst, std::abs(parent - s));
          }
        }
      }
    }
  }
  return worst;
}

void RebuildFromFinest(Hierarchy2D& h) {
  const int top = h.levels() - 1;
  const int64_t w = h.hierarchy.domain_size();
  for (int l1 = 0; l1 <= top; ++l1) {
    for (int l2 = 0; l2 <= top; ++l2) {
      if (l1 == top && l2 == top) continue;
      auto& t = h.table(l1, l2);
      std::fill(t.begin(), t.end(), 0.0);
      const int64_t wr = h.hierarchy.WidthAt(l1), wc = h.hierarchy.WidthAt(l2);
      for (int64_t r = 0; r < w; ++r) {
        for (int64_t k = 0; k < w; ++k) h.at(l1, l2, r / wr, k / wc) += h.at(top, top, r, k);
      }
    }
  }
}

std::unique_ptr<LhioApproach> LhioApproach::Build(const Dataset& dataset, double epsilon, uint64_t seed,
                                                  const LhioOptions& options) {
  const int d = dataset.num_attributes();
  if (d < 2) throw std::invalid_argument("LHIO needs at least two attributes");
  const int64_t padded = PadToPowerOf(dataset.domain_size(), options.branching);
  const Hierarchy1D hier(options.branching, static_cast<int>(padded));
  const int levels = hier.height() + 1;
  const int sub_groups = levels * levels;

  auto lhio = std::unique_ptr<LhioApproach>(new LhioApproach());
  lhio->num_attributes_ = d;
  lhio->domain_size_ = dataset.domain_size();
  lhio->epsilon_ = epsilon;
  lhio->options_ = options;

  const auto pairs = AttributePairs(d);
  const auto pair_members =
      AssignGroups(dataset.num_records(), static_cast<int>(pairs.size()), DeriveSeed(seed, {kLhioAssign}))
          .Members();
  for (size_t p = 0; p < pairs.size(); ++p) {
    if (static_cast<int64_t>(pair_members[p].size()) < sub_groups) {
      throw std::invalid_argument("LHIO needs " + std::to_string(sub_groups) + " users per attribute pair");
    }
  }

  lhio->hierarchies_.resize(pairs.size());
  ParallelFor(0, static_cast<int64_t>(pairs.size()), options.threads, [&](int64_t p) {
    const auto [j, k] = pairs[p];
    Hierarchy2D h = Hierarchy2D::Empty(j, k, hier);
    const auto& members = pair_members[p];
    const auto local = AssignGroups(static_cast<int64_t>(members.size()), sub_groups,
                                    DeriveSeed(seed, {kLhioAssign, static_cast<uint64_t>(p)}))
                           .Members();
    for (int s = 0; s < sub_groups; ++s) {
      const int l1 = s / levels, l2 = s % levels;
      std::vector<int64_t> users;
      users.reserve(local[s].size());
      for (int64_t i : local[s]) users.push_back(members[i]);
      const int64_t cols = hier.NodesAt(l2);
      const int num_cells = static_cast<int>(hier.NodesAt(l1) * cols);
      const uint64_t stream = DeriveSeed(seed, {kLhioStream, static_cast<uint64_t>(p), static_cast<uint64_t>(s)});
      h.table(l1, l2) = CollectCells(users, num_cells, epsilon, stream, [&](int64_t u) {
        return static_cast<int>(hier.NodeOf(dataset.value(u, j), l1) * cols + hier.NodeOf(dataset.value(u, k), l2) + 1);
      });
    }
    HierarchyConsistency(h);
    lhio->hierarchies_[p] = std::move(h);
  });
  lhio->num_reports_ = dataset.num_records();

  // Cross-pair consistency and non-negativity on the finest tables, then
  // rebuild every coarser level from them. Padding cells hold no users, so
  // only the real c x c block takes part and the rest is pinned at zero.
  const int c = dataset.domain_size();
  const auto w = static_cast<size_t>(padded);
  GridSet finest{.mode = GridMode::kTdg, .num_attributes = d, .domain_size = c, .g1 = 0, .g2 = c};
  for (const auto& h : lhio->hierarchies_) {
    const auto& full = h.table(levels - 1, levels - 1);
    std::vector<double> block(static_cast<size_t>(c) * c);
    for (int r = 0; r < c; ++r) {
      std::copy_n(full.begin() + static_cast<std::ptrdiff_t>(r * w), c, block.begin() + static_cast<std::ptrdiff_t>(r) * c);
    }
    finest.grids_2d.push_back(
        {.first = h.first, .second = h.second, .granularity = c, .domain_size = c, .freqs = std::move(block)});
  }
  FullPostprocess(finest, options.postprocess_rounds);
  for (size_t p = 0; p < pairs.size(); ++p) {
    auto& h = lhio->hierarchies_[p];
    auto& full = h.table(levels - 1, levels - 1);
    std::fill(full.begin(), full.end(), 0.0);
    const auto& block = finest.grids_2d[p].freqs;
    for (int r = 0; r < c; ++r) {
      std::copy_n(block.begin() + static_cast<std::ptrdiff_t>(r) * c, c, full.begin() + static_cast<std::ptrdiff_t>(r * w));
    }
    RebuildFromFinest(h);
  }
  return lhio;
}

double LhioApproach::privacy_ratio() const { return OlhParams::Create(2, epsilon_).PrivacyRatio(); }

double LhioApproach::AnswerPair(int a, const Interval& range_a, int b, const Interval& range_b) const {
  if (a == b) throw std::invalid_argument("pair query needs two distinct attributes");
  if (a > b) return AnswerPair(b, range_b, a, range_a);
  return hierarchies_[PairIndex(a, b, num_attributes_)].RangeSum(range_a, range_b);
}

double LhioApproach::Answer(const RangeQuery& query) const {
  query.Validate(num_attributes_, domain_size_);
  const auto& preds = query.predicates();
  switch (query.dimension()) {
    case 1: {
      const int a = preds[0].attribute;
      return AnswerPair(a, preds[0].interval, a == 0 ? 1 : 0, {1, domain_size_});
    }
    case 2:
      return AnswerPair(preds[0].attribute, preds[0].interval, preds[1].attribute, preds[1].interval);
    default:
      return EstimateFromPairs(
          query, domain_size_,
          [this](int a, const Interval& ra, int b, const Interval& rb) { return AnswerPair(a, ra, b, rb); },
          options_.lambda);
  }
}

}  // namespace ldprange
