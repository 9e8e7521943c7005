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

#include "ldprange/square_wave.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ldprange {

SwParams SwParams::Create(double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(2 * std::expm1(epsilon))) {
    throw std::invalid_argument("Square Wave needs a non-negative epsilon with finite e^epsilon");
  }
  SwParams params{.epsilon = epsilon};
  if (epsilon < 1e-6) {
    // Limit of the closed form as epsilon -> 0: uniform output over [-1/2, 3/2].
    params.delta = 0.5;
  } else {
    // Numerator and denominator divided by e^eps, so nothing overflows below the guard.
    params.delta = (epsilon + std::expm1(-epsilon)) / (2 * (std::expm1(epsilon) - epsilon));
  }
  const double inv = std::exp(-epsilon);
  params.p = 1 / (2 * params.delta + inv);
  params.p_other = inv / (2 * params.delta + inv);
  return params;
}

double SwPerturb(double value, const SwParams& params, SplitMix64& rng) {
  if (!(value >= 0.0 && value <= 1.0)) throw std::out_of_range("Square Wave input outside [0, 1]");
  const double near_mass = 2 * params.delta * params.p;
  const double u = UniformUnit(rng);
  if (u < near_mass) return value - params.delta + 2 * params.delta * (u / near_mass);
  // The far region has total length 1: [-delta, v - delta) then (v + delta, 1 + delta].
  const double t = UniformUnit(rng);
  return t < value ? -params.delta + t : value + params.delta + (t - value);
}

std::vector<std::vector<double>> SwTransitionMatrix(const SwParams& params, int buckets) {
  if (buckets < 2) throw std::invalid_argument("Square Wave EM needs at least 2 buckets");
  const int pad = static_cast<int>(std::ceil(params.delta * buckets));
  const int bins = buckets + 2 * pad;
  std::vector<std::vector<double>> matrix(bins, std::vector<double>(buckets));
  for (int b = 0; b < bins; ++b) {
    const double lo = std::max(-params.delta, static_cast<double>(b - pad) / buckets);
    const double hi = std::min(1 + params.delta, static_cast<double>(b - pad + 1) / buckets);
    const double width = std::max(0.0, hi - lo);
    for (int i = 0; i < buckets; ++i) {
      const double v = BucketCenter(i + 1, buckets);
      const double near = std::max(0.0, std::min(hi, v + params.delta) - std::max(lo, v - params.delta));
      matrix[b][i] = params.p * near + params.p_other * (width - near);
    }
  }
  return matrix;
}

FrequencyEstimate SwEmReconstruct(std::span<const double> reports, const SwParams& params,
                                  int buckets, const SwEmOptions& options) {
  if (reports.empty()) throw std::invalid_argument("Square Wave EM needs at least one report");
  const auto transition = SwTransitionMatrix(params, buckets);
  const int pad = static_cast<int>(std::ceil(params.delta * buckets));
  const int bins = static_cast<int>(transition.size());

  std::vector<double> counts(bins, 0.0);
  for (double y : reports) {
    const int b = static_cast<int>(std::floor(y * buckets)) + pad;
    counts[std::clamp(b, 0, bins - 1)] += 1;
  }
  const double n = static_cast<double>(reports.size());

  FrequencyEstimate theta(buckets, 1.0 / buckets);
  std::vector<double> predicted(bins);
  std::vector<double> next(buckets);
  double prev_loglik = -std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double loglik = 0;
    for (int b = 0; b < bins; ++b) {
      double s = 0;
      for (int i = 0; i < buckets; ++i) s += transition[b][i] * theta[i];
      predicted[b] = s;
      if (counts[b] > 0) loglik += counts[b] * std::log(s);
    }
    loglik /= n;
    if (loglik - prev_loglik < options.tolerance) break;
    prev_loglik = loglik;

    std::fill(next.begin(), next.end(), 0.0);
    for (int b = 0; b < bins; ++b) {
      if (counts[b] == 0 || predicted[b] <= 0) continue;
      const double w = counts[b] / predicted[b];
      for (int i = 0; i < buckets; ++i) next[i] += w * transition[b][i];
    }
    double total = 0;
    for (int i = 0; i < buckets; ++i) {
      theta[i] *= next[i] / n;
      total += theta[i];
    }
    for (double& t : theta) t /= total;
  }
  return theta;
}

}  // namespace ldprange
