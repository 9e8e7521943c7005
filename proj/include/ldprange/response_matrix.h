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

#ifndef LDPRANGE_RESPONSE_MATRIX_H_
#define LDPRANGE_RESPONSE_MATRIX_H_

#include <vector>

#include "json.hpp"
#include "ldprange/grid.h"
#include "ldprange/query.h"

namespace ldprange {

// c x c estimate of the joint distribution of one attribute pair.
class ResponseMatrix {
 public:
  ResponseMatrix() = default;
  ResponseMatrix(int first, int second, int domain_size, std::vector<double> entries);

  int first() const { return first_; }
  int second() const { return second_; }
  int domain_size() const { return domain_size_; }
  // Number of full update sweeps the fit ran.
  int sweeps() const { return sweeps_; }
  void set_sweeps(int sweeps) { sweeps_ = sweeps; }

  // 1-based values.
  double at(int value_first, int value_second) const {
    return entries_[static_cast<size_t>(value_first - 1) * domain_size_ + (value_second - 1)];
  }
  const std::vector<double>& entries() const { return entries_; }

  // Sum of entries over rows x cols in O(1) via prefix sums.
  double RectangleSum(const Interval& rows, const Interval& cols) const;

 private:
  int first_ = 0;
  int second_ = 1;
  int domain_size_ = 0;
  int sweeps_ = 0;
  std::vector<double> entries_;
  std::vector<double> prefix_;  // (c+1) x (c+1)
};

struct WeightedUpdateOptions {
  // Stop once a sweep changes the entries by less than this in total (L1).
  double tolerance = 1e-7;
  int max_sweeps = 1000;
};

// Threshold below 1/n: min(1e-7, 1/n).
double DefaultTolerance(int64_t n);

// Starts from the uniform 1/c^2 matrix and repeatedly rescales, for every cell
// of the 1-D grids of both attributes and of their 2-D grid, the block of
// values the cell covers so the block sums to the cell frequency (blocks with
// a zero current sum are skipped). Throws on non-finite grid input.
ResponseMatrix BuildResponseMatrix(const Grid1D& first_grid, const Grid1D& second_grid,
                                   const Grid2D& pair_grid,
                                   const WeightedUpdateOptions& options = {});

nlohmann::json ToJson(const ResponseMatrix& matrix);
ResponseMatrix ResponseMatrixFromJson(const nlohmann::json& j);

}  // namespace ldprange

#endif  // LDPRANGE_RESPONSE_MATRIX_H_
