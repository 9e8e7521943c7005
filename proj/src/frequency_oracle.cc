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

#include "ldprange/frequency_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ldprange/parallel.h"

namespace ldprange {

namespace {

// Hashed domain used when epsilon is infinite; large enough that collisions
// are negligible for any simulated group.
constexpr int64_t kMaxHashedSize = int64_t{1} << 32;

void CheckEpsilon(double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
}

}  // namespace

GrrParams GrrParams::Create(int domain_size, double epsilon) {
  if (domain_size < 2) throw std::invalid_argument("GRR domain must have at least 2 values");
  CheckEpsilon(epsilon);
  GrrParams params{.domain_size = domain_size, .epsilon = epsilon};
  if (std::isinf(epsilon)) {
    params.p = 1.0;
    params.p_other = 0.0;
  } else {
    // Divided through by e^eps so very large budgets cannot overflow.
    const double inv = std::exp(-epsilon);
    params.p = 1.0 / (1.0 + (domain_size - 1) * inv);
    params.p_other = inv / (1.0 + (domain_size - 1) * inv);
  }
  return params;
}

double GrrParams::PrivacyRatio() const {
  return p_other > 0 ? p / p_other : std::numeric_limits<double>::infinity();
}

int GrrPerturb(int value, const GrrParams& params, SplitMix64& rng) {
  if (value < 1 || value > params.domain_size) {
    throw std::out_of_range("GRR input " + std::to_string(value) + " outside [1, " +
                            std::to_string(params.domain_size) + "]");
  }
  if (UniformUnit(rng) < params.p) return value;
  // Uniform over the c - 1 other values.
  const int other = 1 + static_cast<int>(UniformBelow(rng, params.domain_size - 1));
  return other >= value ? other + 1 : other;
}

FrequencyEstimate GrrAggregate(std::span<const int> reports, const GrrParams& params) {
  if (reports.empty()) throw std::invalid_argument("GRR aggregation needs at least one report");
  std::vector<int64_t> counts(params.domain_size, 0);
  for (int y : reports) ++counts.at(y - 1);
  const double n = static_cast<double>(reports.size());
  FrequencyEstimate est(params.domain_size);
  for (int v = 0; v < params.domain_size; ++v) {
    est[v] = (counts[v] / n - params.p_other) / (params.p - params.p_other);
  }
  return est;
}

double GrrVariance(double epsilon, int domain_size, int64_t n) {
  const double inv = std::exp(-epsilon);
  return ((domain_size - 2) * inv * inv + inv) / ((1 - inv) * (1 - inv) * static_cast<double>(n));
}

OlhParams OlhParams::Create(int64_t domain_size, double epsilon) {
  if (domain_size < 1) throw std::invalid_argument("OLH domain must be non-empty");
  CheckEpsilon(epsilon);
  OlhParams params{.domain_size = domain_size, .epsilon = epsilon};
  if (std::isinf(epsilon)) {
    params.hashed_size = kMaxHashedSize;
    params.p = 1.0;
    return params;
  }
  const double e = std::exp(epsilon);
  const double ideal = std::round(e + 1.0);
  params.hashed_size =
      ideal >= static_cast<double>(kMaxHashedSize) ? kMaxHashedSize
                                                   : std::max<int64_t>(2, static_cast<int64_t>(ideal));
  params.p = 1.0 / (1.0 + (static_cast<double>(params.hashed_size) - 1) * std::exp(-epsilon));
  return params;
}

double OlhParams::PrivacyRatio() const {
  // GRR over [c']: p / p' with p' = (1 - p) / (c' - 1).
  const double p_other = (1.0 - p) / static_cast<double>(hashed_size - 1);
  return p_other > 0 ? p / p_other : std::numeric_limits<double>::infinity();
}

int64_t OlhHash(uint64_t hash_seed, int64_t value, int64_t hashed_size) {
  const uint64_t h = Mix64(hash_seed ^ (static_cast<uint64_t>(value) * 0x9E3779B97F4A7C15ULL));
  return 1 + static_cast<int64_t>(h % static_cast<uint64_t>(hashed_size));
}

OlhReport OlhPerturb(int64_t value, const OlhParams& params, uint64_t hash_seed, SplitMix64& rng) {
  if (value < 1 || value > params.domain_size) {
    throw std::out_of_range("OLH input " + std::to_string(value) + " outside [1, " +
                            std::to_string(params.domain_size) + "]");
  }
  const int64_t h = OlhHash(hash_seed, value, params.hashed_size);
  OlhReport report{.hash_seed = hash_seed, .y = h};
  if (UniformUnit(rng) >= params.p) {
    const auto other = 1 + static_cast<int64_t>(UniformBelow(rng, params.hashed_size - 1));
    report.y = other >= h ? other + 1 : other;
  }
  return report;
}

FrequencyEstimate OlhAggregate(std::span<const OlhReport> reports, const OlhParams& params,
                               int threads) {
  if (reports.empty()) throw std::invalid_argument("OLH aggregation needs at least one report");
  FrequencyEstimate est(params.domain_size);
  ParallelFor(0, params.domain_size, threads, [&](int64_t v) {
    est[v] = OlhEstimateValue(reports, params, v + 1);
  });
  return est;
}

double OlhEstimateValue(std::span<const OlhReport> reports, const OlhParams& params, int64_t value) {
  if (reports.empty()) throw std::invalid_argument("OLH aggregation needs at least one report");
  int64_t support = 0;
  for (const auto& r : reports) support += OlhHash(r.hash_seed, value, params.hashed_size) == r.y;
  const double n = static_cast<double>(reports.size());
  const double q = 1.0 / static_cast<double>(params.hashed_size);
  return (support / n - q) / (params.p - q);
}

double OlhVariance(double epsilon, int64_t n) {
  const double inv = std::exp(-epsilon);
  return 4 * inv / ((1 - inv) * (1 - inv) * static_cast<double>(n));
}

double PredictedSquaredError(double epsilon, int64_t n, int64_t num_groups) {
  if (!(epsilon > 0) || n <= 0 || num_groups <= 0) {
    throw std::invalid_argument("predicted error needs positive epsilon, n and m");
  }
  return static_cast<double>(num_groups) * OlhVariance(epsilon, n);
}

}  // namespace ldprange
