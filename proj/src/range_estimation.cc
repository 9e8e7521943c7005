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

#include "ldprange/range_estimation.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ldprange {

double Answer2D(const Grid2D& grid, const Interval& first_range, const Interval& second_range,
                const ResponseMatrix* matrix) {
  const int w = grid.cell_width();
  double answer = 0;
  for (int r = 0; r < grid.granularity; ++r) {
    const Interval rows = grid.CellInterval(r);
    const int row_overlap = OverlapLength(rows, first_range);
    if (row_overlap == 0) continue;
    for (int k = 0; k < grid.granularity; ++k) {
      const Interval cols = grid.CellInterval(k);
      const int col_overlap = OverlapLength(cols, second_range);
      if (col_overlap == 0) continue;
      if (row_overlap == w && col_overlap == w) {
        answer += grid.at(r, k);
      } else if (matrix != nullptr) {
        answer += matrix->RectangleSum(
            {std::max(rows.lo, first_range.lo), std::min(rows.hi, first_range.hi)},
            {std::max(cols.lo, second_range.lo), std::min(cols.hi, second_range.hi)});
      } else {
        answer += grid.at(r, k) * (static_cast<double>(row_overlap) * col_overlap) /
                  (static_cast<double>(w) * w);
      }
    }
  }
  return answer;
}

double Answer2D(const Grid2D& grid, const RangeQuery& query, const ResponseMatrix* matrix) {
  if (query.dimension() != 2) throw std::invalid_argument("Answer2D needs a 2-D query");
  const auto& p = query.predicates();
  if (p[0].attribute == grid.first && p[1].attribute == grid.second) {
    return Answer2D(grid, p[0].interval, p[1].interval, matrix);
  }
  if (p[1].attribute == grid.first && p[0].attribute == grid.second) {
    return Answer2D(grid, p[1].interval, p[0].interval, matrix);
  }
  throw std::invalid_argument("query attributes do not match the grid");
}

double Answer1D(const Grid1D& grid, const Interval& range) {
  const int w = grid.cell_width();
  double answer = 0;
  for (int s = 0; s < grid.granularity; ++s) {
    const int overlap = OverlapLength(grid.CellInterval(s), range);
    if (overlap == w) {
      answer += grid.freqs[s];
    } else if (overlap > 0) {
      answer += grid.freqs[s] * overlap / w;
    }
  }
  return answer;
}

LambdaEstimate AnswerLambda(int lambda, const std::vector<PairAnswer>& pairs,
                            const LambdaOptions& options) {
  if (lambda <= 2) throw std::invalid_argument("lambda-D estimation needs lambda > 2; use Answer2D");
  if (lambda > 20) throw std::invalid_argument("query dimension too large for the answer vector");
  if (pairs.size() != static_cast<size_t>(lambda * (lambda - 1) / 2)) {
    throw std::invalid_argument("expected C(lambda, 2) = " + std::to_string(lambda * (lambda - 1) / 2) +
                                " pair answers, got " + std::to_string(pairs.size()));
  }
  for (const auto& pa : pairs) {
    if (pa.a < 0 || pa.b <= pa.a || pa.b >= lambda) throw std::invalid_argument("bad pair index");
  }

  const size_t size = size_t{1} << lambda;
  LambdaEstimate est{.z = std::vector<double>(size, 1.0 / static_cast<double>(size))};

  // (pair, x, y) constraint: entries with bit a == x and bit b == y.
  auto apply = [&](const PairAnswer& pa, int x, int y) {
    const size_t mask = (size_t{1} << pa.a) | (size_t{1} << pa.b);
    const size_t want = (static_cast<size_t>(x) << pa.a) | (static_cast<size_t>(y) << pa.b);
    double sum = 0;
    for (size_t i = 0; i < size; ++i) {
      if ((i & mask) == want) sum += est.z[i];
    }
    if (sum == 0) return;
    const double scale = pa.quadrant[x][y] / sum;
    for (size_t i = 0; i < size; ++i) {
      if ((i & mask) == want) est.z[i] *= scale;
    }
  };

  while (est.sweeps < options.max_sweeps) {
    ++est.sweeps;
    const std::vector<double> previous = est.z;
    for (const auto& pa : pairs) {
      if (options.full_constraints) {
        for (int x = 0; x < 2; ++x) {
          for (int y = 0; y < 2; ++y) apply(pa, x, y);
        }
      } else {
        apply(pa, 1, 1);
      }
    }
    double change = 0;
    for (size_t i = 0; i < size; ++i) change += std::abs(est.z[i] - previous[i]);
    if (change < options.tolerance) break;
  }
  est.answer = est.z[size - 1];
  return est;
}

std::vector<Interval> Complement(const Interval& range, int domain_size) {
  std::vector<Interval> parts;
  if (range.lo > 1) parts.push_back({1, range.lo - 1});
  if (range.hi < domain_size) parts.push_back({range.hi + 1, domain_size});
  return parts;
}

double EstimateFromPairs(const RangeQuery& query, int domain_size, const PairAnswerFn& answer_pair,
                         const LambdaOptions& options) {
  const auto& preds = query.predicates();
  const int lambda = query.dimension();
  std::vector<PairAnswer> pairs;
  for (int a = 0; a < lambda; ++a) {
    for (int b = a + 1; b < lambda; ++b) {
      PairAnswer pa{.a = a, .b = b};
      const auto& pred_a = preds[a];
      const auto& pred_b = preds[b];
      pa.quadrant[1][1] = answer_pair(pred_a.attribute, pred_a.interval, pred_b.attribute, pred_b.interval);
      if (options.full_constraints) {
        const std::vector<Interval> inside_a{pred_a.interval}, inside_b{pred_b.interval};
        const auto outside_a = Complement(pred_a.interval, domain_size);
        const auto outside_b = Complement(pred_b.interval, domain_size);
        for (int x = 0; x < 2; ++x) {
          for (int y = 0; y < 2; ++y) {
            if (x == 1 && y == 1) continue;
            double total = 0;
            for (const auto& ra : x ? inside_a : outside_a) {
              for (const auto& rb : y ? inside_b : outside_b) {
                total += answer_pair(pred_a.attribute, ra, pred_b.attribute, rb);
              }
            }
            pa.quadrant[x][y] = total;
          }
        }
      }
      pairs.push_back(pa);
    }
  }
  return AnswerLambda(lambda, pairs, options).answer;
}

}  // namespace ldprange
