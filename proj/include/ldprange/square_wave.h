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

// Square Wave mechanism for values normalized to [0, 1], with an EM
// aggregator that recovers a bucketized input distribution.

#ifndef LDPRANGE_SQUARE_WAVE_H_
#define LDPRANGE_SQUARE_WAVE_H_

#include <span>
#include <vector>

#include "ldprange/frequency_oracle.h"
#include "ldprange/random.h"

namespace ldprange {

struct SwParams {
  double epsilon = 0.0;
  double delta = 0.0;    // half-width of the high-density band
  double p = 0.0;        // density within delta of the input
  double p_other = 0.0;  // density elsewhere on [-delta, 1 + delta]

  static SwParams Create(double epsilon);

  double PrivacyRatio() const { return p / p_other; }
};

double SwPerturb(double value, const SwParams& params, SplitMix64& rng);

// Center of the 1-based bucket v when [0, 1] is split into `buckets` cells.
inline double BucketCenter(int v, int buckets) { return (v - 0.5) / buckets; }

struct SwEmOptions {
  int max_iterations = 1000;
  // Stop once the mean per-report log-likelihood improves by less than this.
  double tolerance = 1e-9;
};

// Output range discretization used by the EM: bins of width 1/buckets aligned
// to 0, with ceil(delta * buckets) extra bins on each side, truncated at
// -delta and 1 + delta. Row-major [output bin][input bucket]; each column
// sums to 1.
std::vector<std::vector<double>> SwTransitionMatrix(const SwParams& params, int buckets);

// Maximum-likelihood bucket distribution (no smoothing). The result is
// non-negative and sums to 1. Throws std::invalid_argument on empty input.
FrequencyEstimate SwEmReconstruct(std::span<const double> reports, const SwParams& params,
                                  int buckets, const SwEmOptions& options = {});

}  // namespace ldprange

#endif  // LDPRANGE_SQUARE_WAVE_H_
