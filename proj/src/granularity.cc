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

#include "ldprange/granularity.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ldprange {

std::string ToString(GridMode mode) { return mode == GridMode::kTdg ? "tdg" : "hdg"; }

GridMode ParseGridMode(const std::string& name) {
  if (name == "tdg" || name == "TDG") return GridMode::kTdg;
  if (name == "hdg" || name == "HDG") return GridMode::kHdg;
  throw std::invalid_argument("unknown grid mode: " + name);
}

int64_t NumPairs(int num_attributes) {
  return static_cast<int64_t>(num_attributes) * (num_attributes - 1) / 2;
}

int64_t NumGroups(GridMode mode, int num_attributes) {
  return NumPairs(num_attributes) + (mode == GridMode::kHdg ? num_attributes : 0);
}

int NearestPowerOfTwo(double x) {
  if (!(x > 1.0)) return 1;
  constexpr int kLargest = 1 << 30;
  if (x >= kLargest) return kLargest;
  int lo = 1;
  while (static_cast<double>(lo) * 2 <= x) lo *= 2;
  const int hi = lo * 2;
  return (x - lo < hi - x) ? lo : hi;
}

GranularityPlan ChooseGranularities(int64_t n, int num_attributes, double epsilon, int domain_size,
                                    GridMode mode, double alpha1, double alpha2) {
  if (n < 1 || num_attributes < 2 || domain_size < 1) {
    throw std::invalid_argument("granularity guideline needs n >= 1, d >= 2, c >= 1");
  }
  if (!(epsilon > 0)) throw std::invalid_argument("granularity guideline needs epsilon > 0");

  const double users_per_group = static_cast<double>(n) / NumGroups(mode, num_attributes);
  // (e - 1) / sqrt(e) written as 2 sinh(eps / 2), which stays finite-or-inf where e itself overflows.
  const double s = 2 * std::sinh(epsilon / 2);
  GranularityPlan plan{.mode = mode, .alpha1 = alpha1, .alpha2 = alpha2};
  plan.raw_g1 = std::cbrt(users_per_group * s * s * alpha1 * alpha1 / 2);
  plan.raw_g2 = std::sqrt(2 * alpha2 * s * std::sqrt(users_per_group));
  plan.g1 = std::clamp(NearestPowerOfTwo(plan.raw_g1), 1, domain_size);
  plan.g2 = std::clamp(NearestPowerOfTwo(plan.raw_g2), 1, domain_size);
  return plan;
}

}  // namespace ldprange
