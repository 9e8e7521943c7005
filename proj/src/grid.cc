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

#include "ldprange/grid.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ldprange/random.h"

namespace ldprange {

namespace {

constexpr uint64_t kAssignStream = 0xa551;
constexpr uint64_t kGridStream = 0x6e1d;

void CheckGranularity(int g, int c) {
  if (g < 1 || g > c || c % g != 0) {
    throw std::invalid_argument("granularity " + std::to_string(g) + " must divide domain size " +
                                std::to_string(c));
  }
}

}  // namespace

int CellIndex(int value, int granularity, int domain_size) {
  // ceil(v * g / c) in integer arithmetic.
  return static_cast<int>((static_cast<int64_t>(value) * granularity + domain_size - 1) / domain_size);
}

int CellIndex2D(int value_first, int value_second, int granularity, int domain_size) {
  return (CellIndex(value_first, granularity, domain_size) - 1) * granularity +
         CellIndex(value_second, granularity, domain_size);
}

int PairIndex(int j, int k, int num_attributes) {
  if (j > k) std::swap(j, k);
  if (j < 0 || k >= num_attributes || j == k) throw std::out_of_range("invalid attribute pair");
  // Pairs starting with 0..j-1 come first.
  return j * num_attributes - j * (j + 1) / 2 + (k - j - 1);
}

std::vector<std::pair<int, int>> AttributePairs(int num_attributes) {
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < num_attributes; ++j) {
    for (int k = j + 1; k < num_attributes; ++k) pairs.emplace_back(j, k);
  }
  return pairs;
}

std::vector<int64_t> GroupAssignment::GroupSizes() const {
  std::vector<int64_t> sizes(num_groups, 0);
  for (int g : group_of_user) ++sizes[g];
  return sizes;
}

std::vector<std::vector<int64_t>> GroupAssignment::Members() const {
  std::vector<std::vector<int64_t>> members(num_groups);
  for (size_t i = 0; i < group_of_user.size(); ++i) {
    members[group_of_user[i]].push_back(static_cast<int64_t>(i));
  }
  return members;
}

GroupAssignment AssignGroups(int64_t n, int num_groups, uint64_t seed) {
  if (num_groups < 1) throw std::invalid_argument("need at least one user group");
  if (num_groups > n) {
    throw std::invalid_argument("cannot split " + std::to_string(n) + " users into " +
                                std::to_string(num_groups) + " non-empty groups");
  }
  std::vector<int64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(DeriveSeed(seed, {kAssignStream}));
  for (int64_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[UniformBelow(rng, static_cast<uint64_t>(i) + 1)]);
  }
  GroupAssignment assignment{.num_groups = num_groups, .group_of_user = std::vector<int>(n)};
  const int64_t base = n / num_groups;
  const int64_t extra = n % num_groups;
  int64_t pos = 0;
  for (int g = 0; g < num_groups; ++g) {
    const int64_t size = base + (g < extra ? 1 : 0);
    for (int64_t i = 0; i < size; ++i) assignment.group_of_user[order[pos++]] = g;
  }
  return assignment;
}

const Grid2D& GridSet::Pair(int j, int k) const { return grids_2d.at(PairIndex(j, k, num_attributes)); }

const Grid1D& GridSet::Single(int attribute) const {
  if (grids_1d.empty()) throw std::logic_error("TDG grid set has no 1-D grids");
  return grids_1d.at(attribute);
}

GridSet BuildGrids(const Dataset& dataset, const GranularityPlan& plan, double epsilon,
                   uint64_t seed, const GridBuildOptions& options) {
  const int d = dataset.num_attributes();
  const int c = dataset.domain_size();
  if (d < 2) throw std::invalid_argument("grid approaches need at least two attributes");
  const bool hdg = plan.mode == GridMode::kHdg;
  if (hdg) CheckGranularity(plan.g1, c);
  CheckGranularity(plan.g2, c);

  const int m = static_cast<int>(NumGroups(plan.mode, d));
  auto assignment = AssignGroups(dataset.num_records(), m, seed);
  const auto members = assignment.Members();

  GridSet grids{.mode = plan.mode, .num_attributes = d, .domain_size = c,
                .g1 = hdg ? plan.g1 : 0, .g2 = plan.g2};
  int group = 0;
  if (hdg) {
    for (int a = 0; a < d; ++a, ++group) {
      Grid1D grid{.attribute = a, .granularity = plan.g1, .domain_size = c};
      grid.freqs = CollectCells(
          members[group], plan.g1, epsilon, DeriveSeed(seed, {kGridStream, uint64_t(group)}),
          [&](int64_t user) { return CellIndex(dataset.value(user, a), plan.g1, c); },
          options.threads);
      grids.grids_1d.push_back(std::move(grid));
      grids.num_reports += static_cast<int64_t>(members[group].size());
    }
  }
  for (const auto& [j, k] : AttributePairs(d)) {
    Grid2D grid{.first = j, .second = k, .granularity = plan.g2, .domain_size = c};
    grid.freqs = CollectCells(
        members[group], plan.g2 * plan.g2, epsilon,
        DeriveSeed(seed, {kGridStream, uint64_t(group)}),
        [&, j = j, k = k](int64_t user) {
          return CellIndex2D(dataset.value(user, j), dataset.value(user, k), plan.g2, c);
        },
        options.threads);
    grids.grids_2d.push_back(std::move(grid));
    grids.num_reports += static_cast<int64_t>(members[group].size());
    ++group;
  }
  if (options.assignment_out != nullptr) *options.assignment_out = std::move(assignment);
  return grids;
}

nlohmann::json ToJson(const GridSet& grids) {
  nlohmann::json j;
  j["mode"] = ToString(grids.mode);
  j["num_attributes"] = grids.num_attributes;
  j["domain_size"] = grids.domain_size;
  j["g1"] = grids.g1;
  j["g2"] = grids.g2;
  j["num_reports"] = grids.num_reports;
  j["grids_1d"] = nlohmann::json::array();
  for (const auto& g : grids.grids_1d) {
    j["grids_1d"].push_back(
        {{"attribute", g.attribute}, {"granularity", g.granularity}, {"freqs", g.freqs}});
  }
  j["grids_2d"] = nlohmann::json::array();
  for (const auto& g : grids.grids_2d) {
    j["grids_2d"].push_back({{"attributes", {g.first, g.second}},
                             {"granularity", g.granularity},
                             {"freqs", g.freqs}});
  }
  return j;
}

GridSet GridSetFromJson(const nlohmann::json& j) {
  GridSet grids;
  grids.mode = ParseGridMode(j.at("mode").get<std::string>());
  grids.num_attributes = j.at("num_attributes").get<int>();
  grids.domain_size = j.at("domain_size").get<int>();
  grids.g1 = j.at("g1").get<int>();
  grids.g2 = j.at("g2").get<int>();
  grids.num_reports = j.value("num_reports", int64_t{0});
  for (const auto& g : j.at("grids_1d")) {
    Grid1D grid{.attribute = g.at("attribute").get<int>(),
                .granularity = g.at("granularity").get<int>(),
                .domain_size = grids.domain_size,
                .freqs = g.at("freqs").get<std::vector<double>>()};
    if (grid.freqs.size() != static_cast<size_t>(grid.granularity)) {
      throw std::runtime_error("1-D grid frequency vector has the wrong length");
    }
    grids.grids_1d.push_back(std::move(grid));
  }
  for (const auto& g : j.at("grids_2d")) {
    const auto attrs = g.at("attributes").get<std::vector<int>>();
    if (attrs.size() != 2) throw std::runtime_error("2-D grid needs two attributes");
    Grid2D grid{.first = attrs[0],
                .second = attrs[1],
                .granularity = g.at("granularity").get<int>(),
                .domain_size = grids.domain_size,
                .freqs = g.at("freqs").get<std::vector<double>>()};
    if (grid.freqs.size() != static_cast<size_t>(grid.granularity) * grid.granularity) {
      throw std::runtime_error("2-D grid frequency vector has the wrong length");
    }
    grids.grids_2d.push_back(std::move(grid));
  }
  if (grids.grids_2d.size() != static_cast<size_t>(NumPairs(grids.num_attributes))) {
    throw std::runtime_error("grid set must hold one 2-D grid per attribute pair");
  }
  return grids;
}

}  // namespace ldprange
