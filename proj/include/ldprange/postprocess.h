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

// Non-negativity (Norm-Sub) and cross-grid consistency for grid sets.

#ifndef LDPRANGE_POSTPROCESS_H_
#define LDPRANGE_POSTPROCESS_H_

#include <span>
#include <vector>

#include "ldprange/grid.h"

namespace ldprange {

// Repeatedly zeroes negative entries and shifts the positive ones by the
// common amount that restores a total of 1, until nothing is negative.
// Falls back to the uniform vector when no positive entry survives.
void NormSub(std::span<double> freqs);
std::vector<double> NormSubCopy(std::vector<double> freqs);

// theta_i = (1/|S_i|) / sum_k (1/|S_k|).
std::vector<double> ConsistencyWeights(std::span<const int> set_sizes);

// Makes every grid touching `attribute` agree on the attribute's coarse
// marginal. Coarse chunks follow the smallest granularity among those grids
// (g2 for HDG/TDG); each grid's chunk total P_G is pulled to the
// inverse-|S|-weighted average by spreading (P - P_G) / |S| over the |S|
// contributing cells.
void AttributeConsistency(GridSet& grids, int attribute);

// `rounds` times: consistency for attributes 0..d-1, then Norm-Sub on every
// grid. Ends with Norm-Sub, so every grid is a distribution afterwards.
void FullPostprocess(GridSet& grids, int rounds = 3);

// Coarse marginal of `attribute` as seen by each grid touching it, one vector
// per grid (1-D grid first, then pairs in AttributePairs order).
std::vector<std::vector<double>> CoarseMarginals(const GridSet& grids, int attribute);

// max over attributes and coarse chunks of |P_Gi(a, j) - P_Gk(a, j)|.
double MaxConsistencyResidual(const GridSet& grids);

}  // namespace ldprange

#endif  // LDPRANGE_POSTPROCESS_H_
