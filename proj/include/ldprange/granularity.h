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

#ifndef LDPRANGE_GRANULARITY_H_
#define LDPRANGE_GRANULARITY_H_

#include <cstdint>
#include <string>

namespace ldprange {

// TDG collects only 2-D grids; HDG adds one 1-D grid per attribute.
enum class GridMode { kTdg, kHdg };

std::string ToString(GridMode mode);
GridMode ParseGridMode(const std::string& name);

constexpr double kDefaultAlpha1 = 0.7;
constexpr double kDefaultAlpha2 = 0.03;

struct GranularityPlan {
  GridMode mode = GridMode::kHdg;
  int g1 = 0;  // 1-D cells per grid (unused by TDG)
  int g2 = 0;  // cells per axis of a 2-D grid
  double alpha1 = kDefaultAlpha1;
  double alpha2 = kDefaultAlpha2;
  // Unrounded guideline values, kept for reporting.
  double raw_g1 = 0;
  double raw_g2 = 0;
};

int64_t NumPairs(int num_attributes);
// d + C(d, 2) for HDG, C(d, 2) for TDG.
int64_t NumGroups(GridMode mode, int num_attributes);

// Power of two nearest to x in absolute distance; ties go up. Values below 1
// return 1.
int NearestPowerOfTwo(double x);

// Guideline granularities for n users, d attributes and budget epsilon:
//   g1 = cbrt(n1 (e^eps - 1)^2 alpha1^2 / (2 m1 e^eps))
//   g2 = sqrt(2 alpha2 (e^eps - 1) sqrt(n2 / (m2 e^eps)))
// with every group holding n / NumGroups(mode, d) users. Both are rounded with
// NearestPowerOfTwo and clamped to [1, c].
GranularityPlan ChooseGranularities(int64_t n, int num_attributes, double epsilon, int domain_size,
                                    GridMode mode, double alpha1 = kDefaultAlpha1,
                                    double alpha2 = kDefaultAlpha2);

}  // namespace ldprange

#endif  // LDPRANGE_GRANULARITY_H_
