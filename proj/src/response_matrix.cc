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

#include "ldprange/response_matrix.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ldprange {

namespace {

void CheckFinite(const std::vector<double>& freqs) {
  for (double f : freqs) {
    if (!std::isfinite(f)) throw std::invalid_argument("response matrix input grid is not finite");
  }
}

// Rescales the block rows x cols of the c x c matrix to sum to target.
void ScaleBlock(std::vector<double>& m, int c, const Interval& rows, const Interval& cols,
                  double target) {
  double sum = 0;
  for (int r = rows.lo - 1; r < rows.hi; ++r) {
    for (int k = cols.lo - 1; k < cols.hi; ++k) sum += m[static_cast<size_t>(r) * c + k];
  }
  if (sum == 0) return;
  const double scale = target / sum;
  for (int r = rows.lo - 1; r < rows.hi; ++r) {
    for (int k = cols.lo - 1; k < cols.hi; ++k) m[static_cast<size_t>(r) * c + k] *= scale;
  }
}

}  // namespace

ResponseMatrix::ResponseMatrix(int first, int second, int domain_size, std::vector<double> entries)
    : first_(first), second_(second), domain_size_(domain_size), entries_(std::move(entries)) {
  const size_t c = static_cast<size_t>(domain_size_);
  if (entries_.size() != c * c) throw std::invalid_argument("response matrix must be c x c");
  prefix_.assign((c + 1) * (c + 1), 0.0);
  for (size_t r = 0; r < c; ++r) {
    for (size_t k = 0; k < c; ++k) {
      prefix_[(r + 1) * (c + 1) + k + 1] = entries_[r * c + k] + prefix_[r * (c + 1) + k + 1] +
                                           prefix_[(r + 1) * (c + 1) + k] - prefix_[r * (c + 1) + k];
    }
  }
}

double ResponseMatrix::RectangleSum(const Interval& rows, const Interval& cols) const {
  const size_t w = static_cast<size_t>(domain_size_) + 1;
  const auto p = [&](int r, int k) { return prefix_[static_cast<size_t>(r) * w + k]; };
  return p(rows.hi, cols.hi) - p(rows.lo - 1, cols.hi) - p(rows.hi, cols.lo - 1) +
         p(rows.lo - 1, cols.lo - 1);
}

double DefaultTolerance(int64_t n) {
  return std::min(1e-7, 1.0 / static_cast<double>(std::max<int64_t>(n, 1)));
}

ResponseMatrix BuildResponseMatrix(const Grid1D& first_grid, const Grid1D& second_grid,
                                   const Grid2D& pair_grid, const WeightedUpdateOptions& options) {
  const int c = pair_grid.domain_size;
  if (first_grid.domain_size != c || second_grid.domain_size != c) {
    throw std::invalid_argument("response matrix grids disagree on the domain size");
  }
  CheckFinite(first_grid.freqs);
  CheckFinite(second_grid.freqs);
  CheckFinite(pair_grid.freqs);

  const Interval full{1, c};
  std::vector<double> m(static_cast<size_t>(c) * c, 1.0 / (static_cast<double>(c) * c));
  std::vector<double> previous;
  int sweeps = 0;
  while (sweeps < options.max_sweeps) {
    ++sweeps;
    previous = m;
    for (int s = 0; s < first_grid.granularity; ++s) {
      ScaleBlock(m, c, first_grid.CellInterval(s), full, first_grid.freqs[s]);
    }
    for (int s = 0; s < second_grid.granularity; ++s) {
      ScaleBlock(m, c, full, second_grid.CellInterval(s), second_grid.freqs[s]);
    }
    for (int r = 0; r < pair_grid.granularity; ++r) {
      for (int k = 0; k < pair_grid.granularity; ++k) {
        ScaleBlock(m, c, pair_grid.CellInterval(r), pair_grid.CellInterval(k),
                             pair_grid.at(r, k));
      }
    }
    // Net movement over the sweep. Slightly inconsistent grids make single
    // updates cancel inside a sweep, so summing them would never settle.
    double change = 0;
    for (size_t i = 0; i < m.size(); ++i) change += std::abs(m[i] - previous[i]);
    if (change < options.tolerance) break;
  }
  ResponseMatrix matrix(pair_grid.first, pair_grid.second, c, std::move(m));
  matrix.set_sweeps(sweeps);
  return matrix;
}

nlohmann::json ToJson(const ResponseMatrix& matrix) {
  return {{"attributes", {matrix.first(), matrix.second()}},
          {"domain_size", matrix.domain_size()},
          {"sweeps", matrix.sweeps()},
          {"entries", matrix.entries()}};
}

ResponseMatrix ResponseMatrixFromJson(const nlohmann::json& j) {
  const auto attrs = j.at("attributes").get<std::vector<int>>();
  if (attrs.size() != 2) throw std::runtime_error("response matrix needs two attributes");
  ResponseMatrix m(attrs[0], attrs[1], j.at("domain_size").get<int>(),
                   j.at("entries").get<std::vector<double>>());
  m.set_sweeps(j.value("sweeps", 0));
  return m;
}

}  // namespace ldprange
