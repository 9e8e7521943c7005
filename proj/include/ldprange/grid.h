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

// Uniform 1-D and 2-D grids over ordinal domains and their collection from
// users through OLH.

#ifndef LDPRANGE_GRID_H_
#define LDPRANGE_GRID_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ldprange/dataset.h"
#include "ldprange/granularity.h"
#include "ldprange/query.h"

namespace ldprange {

// g equal cells over [1, c]; cell i (0-based) covers
// [i * c/g + 1, (i + 1) * c/g].
struct Grid1D {
  int attribute = 0;
  int granularity = 1;
  int domain_size = 2;
  std::vector<double> freqs;

  int cell_width() const { return domain_size / granularity; }
  Interval CellInterval(int cell) const {
    return {cell * cell_width() + 1, (cell + 1) * cell_width()};
  }
};

// g x g cells over the (first, second) attribute plane, first < second.
// freqs is row-major with the row indexed by the first attribute's cell.
struct Grid2D {
  int first = 0;
  int second = 1;
  int granularity = 1;
  int domain_size = 2;
  std::vector<double> freqs;

  int cell_width() const { return domain_size / granularity; }
  Interval CellInterval(int cell) const {
    return {cell * cell_width() + 1, (cell + 1) * cell_width()};
  }
  double& at(int row, int col) { return freqs[static_cast<size_t>(row) * granularity + col]; }
  double at(int row, int col) const { return freqs[static_cast<size_t>(row) * granularity + col]; }
};

// 1-based cell index of value v in a grid with g cells over [1, c]:
// ceil(v * g / c).
int CellIndex(int value, int granularity, int domain_size);
// Row-major 1-based index of a 2-D cell: (ceil(vj g/c) - 1) * g + ceil(vk g/c).
int CellIndex2D(int value_first, int value_second, int granularity, int domain_size);

// Index of the pair (j, k), j < k, in the order (0,1), (0,2), ..., (d-2, d-1).
int PairIndex(int j, int k, int num_attributes);
std::vector<std::pair<int, int>> AttributePairs(int num_attributes);

struct GroupAssignment {
  int num_groups = 0;
  std::vector<int> group_of_user;

  std::vector<int64_t> GroupSizes() const;
  // User ids of each group in ascending order.
  std::vector<std::vector<int64_t>> Members() const;
};

// Random permutation of the n users cut into m contiguous chunks; the first
// n mod m groups receive one extra user. Throws if m < 1 or m > n.
GroupAssignment AssignGroups(int64_t n, int num_groups, uint64_t seed);

// Grids of one TDG/HDG collection. grids_1d is empty for TDG; grids_2d
// follows AttributePairs order.
struct GridSet {
  GridMode mode = GridMode::kHdg;
  int num_attributes = 0;
  int domain_size = 0;
  int g1 = 0;
  int g2 = 0;
  std::vector<Grid1D> grids_1d;
  std::vector<Grid2D> grids_2d;
  // Number of perturbed reports consumed to build the grids.
  int64_t num_reports = 0;

  const Grid2D& Pair(int j, int k) const;
  const Grid1D& Single(int attribute) const;
};

struct GridBuildOptions {
  int threads = 1;
  // Filled with the user-to-group map when non-null.
  GroupAssignment* assignment_out = nullptr;
};

// Divides users into NumGroups(plan.mode, d) groups (1-D grids first, then
// pairs) and lets each user report its cell on the group's grid through OLH
// with the full budget. Frequencies are raw OLH estimates.
GridSet BuildGrids(const Dataset& dataset, const GranularityPlan& plan, double epsilon,
                   uint64_t seed, const GridBuildOptions& options = {});

// OLH-collects one grid-like categorical value per user of a group. Shared
// by the grid approaches and baselines that report a single cell.
// `cell_of_user(i)` returns the 1-based cell of user i.
template <typename CellFn>
std::vector<double> CollectCells(const std::vector<int64_t>& users, int num_cells, double epsilon,
                                 uint64_t stream_seed, CellFn&& cell_of_user, int threads = 1);

nlohmann::json ToJson(const GridSet& grids);
GridSet GridSetFromJson(const nlohmann::json& j);

}  // namespace ldprange

#include "ldprange/grid_inl.h"

#endif  // LDPRANGE_GRID_H_
