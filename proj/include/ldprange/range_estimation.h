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

// Answering 2-D range queries from a grid and combining pairwise answers into
// a lambda-dimensional estimate.

#ifndef LDPRANGE_RANGE_ESTIMATION_H_
#define LDPRANGE_RANGE_ESTIMATION_H_

#include <array>
#include <functional>
#include <vector>

#include "ldprange/grid.h"
#include "ldprange/query.h"
#include "ldprange/response_matrix.h"

namespace ldprange {

// Sums the frequencies of cells inside first_range x second_range. A cell
// that only partly overlaps contributes either its frequency scaled by the
// overlapped fraction (matrix == nullptr, uniformity assumption) or the sum of
// the response-matrix entries over the overlap.
double Answer2D(const Grid2D& grid, const Interval& first_range, const Interval& second_range,
                const ResponseMatrix* matrix = nullptr);

// Same, for a query over exactly the grid's two attributes.
double Answer2D(const Grid2D& grid, const RangeQuery& query, const ResponseMatrix* matrix = nullptr);

// Answer of a 1-D range from a 1-D grid, uniform within partial cells.
double Answer1D(const Grid1D& grid, const Interval& range);

// Pairwise input to the lambda-D estimator. `a` and `b` index the query's
// predicates (a < b). quadrant[x][y] is the answer with predicate a taking its
// interval (x = 1) or the complement (x = 0), likewise y for b; quadrant[1][1]
// is the plain 2-D answer.
struct PairAnswer {
  int a = 0;
  int b = 1;
  std::array<std::array<double, 2>, 2> quadrant{};
};

struct LambdaOptions {
  double tolerance = 1e-7;
  int max_sweeps = 1000;
  // false: only the interval/interval constraint of each pair is enforced.
  // true: all four interval/complement combinations are enforced.
  bool full_constraints = false;
};

struct LambdaEstimate {
  double answer = 0;
  // 2^lambda entries; bit t of the index set means predicate t takes its
  // interval, so the query itself is the last entry.
  std::vector<double> z;
  int sweeps = 0;
};

// Weighted update over the 2^lambda interval/complement combinations,
// starting from 2^-lambda everywhere. Throws std::invalid_argument when
// lambda <= 2 or a pair is missing.
LambdaEstimate AnswerLambda(int lambda, const std::vector<PairAnswer>& pairs,
                            const LambdaOptions& options = {});

// Splits a lambda-D query (lambda > 2) into its C(lambda, 2) pair queries,
// answers each with `answer_pair(attr_a, range_a, attr_b, range_b)` and
// combines them with AnswerLambda. With full constraints, complement
// quadrants are answered as unions of at most four rectangles.
using PairAnswerFn = std::function<double(int, const Interval&, int, const Interval&)>;
double EstimateFromPairs(const RangeQuery& query, int domain_size, const PairAnswerFn& answer_pair,
                         const LambdaOptions& options = {});

// [1, c] minus [lo, hi], as up to two intervals.
std::vector<Interval> Complement(const Interval& range, int domain_size);

}  // namespace ldprange

#endif  // LDPRANGE_RANGE_ESTIMATION_H_
