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

// Categorical frequency oracles: generalized randomized response (GRR) and
// optimized local hashing (OLH). Domain values are 1-based.

#ifndef LDPRANGE_FREQUENCY_ORACLE_H_
#define LDPRANGE_FREQUENCY_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ldprange/random.h"

namespace ldprange {

// Per-value frequency estimates; entries may be negative before
// post-processing.
using FrequencyEstimate = std::vector<double>;

struct GrrParams {
  int domain_size = 0;
  double epsilon = 0.0;
  double p = 0.0;        // probability of reporting the true value
  double p_other = 0.0;  // probability of each specific other value

  // epsilon may be +infinity (no privacy): p = 1.
  static GrrParams Create(int domain_size, double epsilon);

  // Worst-case output likelihood ratio between two inputs.
  double PrivacyRatio() const;
};

int GrrPerturb(int value, const GrrParams& params, SplitMix64& rng);

// f_v = (count(v)/n - p') / (p - p'), v = 1..c (index v - 1).
FrequencyEstimate GrrAggregate(std::span<const int> reports, const GrrParams& params);

// Predicted variance of one GRR estimate: (c - 2 + e^eps) / ((e^eps - 1)^2 n).
double GrrVariance(double epsilon, int domain_size, int64_t n);

struct OlhParams {
  int64_t domain_size = 0;  // c, the input domain
  int64_t hashed_size = 0;  // c' = max(2, round(e^eps + 1))
  double epsilon = 0.0;
  double p = 0.0;  // GRR keep-probability over [c']

  static OlhParams Create(int64_t domain_size, double epsilon);

  double PrivacyRatio() const;
};

struct OlhReport {
  uint64_t hash_seed = 0;
  int64_t y = 1;  // in [1, c']
};

// Seeded hash into [1, c']: 1 + (Mix64(seed ^ (v * 0x9E3779B97F4A7C15)) mod c').
int64_t OlhHash(uint64_t hash_seed, int64_t value, int64_t hashed_size);

OlhReport OlhPerturb(int64_t value, const OlhParams& params, uint64_t hash_seed, SplitMix64& rng);

// f_v = (1/n) sum_i (1{H_i(v) = y_i} - 1/c') / (p - 1/c') for v = 1..c.
// Values are split across `threads` workers; the result does not depend on
// the thread count.
FrequencyEstimate OlhAggregate(std::span<const OlhReport> reports, const OlhParams& params,
                               int threads = 1);

// Same estimator for a single value, for aggregators that only need a few
// entries of a very large domain.
double OlhEstimateValue(std::span<const OlhReport> reports, const OlhParams& params, int64_t value);

// 4 e^eps / ((e^eps - 1)^2 n).
double OlhVariance(double epsilon, int64_t n);

// Dominant noise-plus-sampling squared error of one cell when n users are
// split into m equal groups: 4 m e^eps / (n (e^eps - 1)^2).
double PredictedSquaredError(double epsilon, int64_t n, int64_t num_groups);

}  // namespace ldprange

#endif  // LDPRANGE_FREQUENCY_ORACLE_H_
