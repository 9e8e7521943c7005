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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

#include "ldprange/frequency_oracle.h"
#include "ldprange/square_wave.h"

namespace ldprange {
namespace {

const double kLn3 = std::log(3.0);

TEST(GrrTest, ProbabilitiesAtLn3) {
  const auto g = GrrParams::Create(3, kLn3);
  EXPECT_NEAR(g.p, 0.6, 1e-12);
  EXPECT_NEAR(g.p_other, 0.2, 1e-12);
  EXPECT_NEAR(g.p + 2 * g.p_other, 1.0, 1e-12);
}

TEST(GrrTest, NoPrivacyReportsTruth) {
  const auto g = GrrParams::Create(5, std::numeric_limits<double>::infinity());
  EXPECT_EQ(g.p, 1.0);
  SplitMix64 rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(GrrPerturb(4, g, rng), 4);
}

TEST(GrrTest, HugeFiniteBudgetBehavesLikeNoNoise) {
  // e^1000 overflows a double; the parameters must not.
  const auto g = GrrParams::Create(5, 1000.0);
  EXPECT_EQ(g.p, 1.0);
  EXPECT_EQ(g.p_other, 0.0);
  EXPECT_EQ(GrrVariance(1000.0, 5, 10), 0.0);
  const std::vector<int> reports = {1, 2, 2, 5};
  const auto est = GrrAggregate(reports, g);
  EXPECT_EQ(est[1], 0.5);
  EXPECT_EQ(est[2], 0.0);
}

TEST(GrrTest, ZeroBudgetIsUniform) {
  const auto g = GrrParams::Create(4, 0.0);
  EXPECT_NEAR(g.p, 0.25, 1e-12);
  EXPECT_NEAR(g.p_other, 0.25, 1e-12);
}

TEST(GrrTest, OutOfDomainInputThrows) {
  const auto g = GrrParams::Create(4, 1.0);
  SplitMix64 rng(1);
  EXPECT_THROW(GrrPerturb(0, g, rng), std::out_of_range);
  EXPECT_THROW(GrrPerturb(5, g, rng), std::out_of_range);
}

TEST(GrrTest, AggregateAtBaselineAndKeepRates) {
  const auto g = GrrParams::Create(3, kLn3);
  // Five reports: value 1 once (rate 0.2 = p'), value 2 three times (0.6 = p).
  const std::vector<int> reports = {1, 2, 2, 2, 3};
  const auto f = GrrAggregate(reports, g);
  EXPECT_NEAR(f[0], 0.0, 1e-12);
  EXPECT_NEAR(f[1], 1.0, 1e-12);
}

TEST(GrrTest, PredictedVariance) { EXPECT_NEAR(GrrVariance(kLn3, 3, 1000), 0.001, 1e-15); }

TEST(GrrTest, OutputDistributionMatchesDefinition) {
  const auto g = GrrParams::Create(4, 1.0);
  SplitMix64 rng(17);
  std::vector<int> counts(4);
  const int n = 200000;
  for (int i = 0; i < n; ++i) ++counts[GrrPerturb(2, g, rng) - 1];
  for (int w = 1; w <= 4; ++w) {
    const double expected = w == 2 ? g.p : g.p_other;
    const double se = std::sqrt(expected * (1 - expected) / n);
    EXPECT_NEAR(counts[w - 1] / static_cast<double>(n), expected, 4 * se) << w;
  }
}

TEST(GrrTest, UnbiasedOverRepeats) {
  // 50 repeats, each over a fixed population; the repeat mean should sit
  // within 4 sqrt(Var / R) of the truth for every value.
  const int c = 8, n = 20000, repeats = 50;
  const double eps = 1.0;
  const auto g = GrrParams::Create(c, eps);
  std::vector<int> values(n);
  for (int i = 0; i < n; ++i) values[i] = 1 + (i * i + 3 * i) % c;
  std::vector<double> truth(c, 0.0);
  for (int v : values) truth[v - 1] += 1.0 / n;

  std::vector<double> mean(c, 0.0);
  for (int r = 0; r < repeats; ++r) {
    SplitMix64 rng(DeriveSeed(42, {static_cast<uint64_t>(r)}));
    std::vector<int> reports(n);
    for (int i = 0; i < n; ++i) reports[i] = GrrPerturb(values[i], g, rng);
    const auto f = GrrAggregate(reports, g);
    for (int v = 0; v < c; ++v) mean[v] += f[v] / repeats;
  }
  const double bound = 4 * std::sqrt(GrrVariance(eps, c, n) / repeats);
  for (int v = 0; v < c; ++v) EXPECT_NEAR(mean[v], truth[v], bound) << v;
}

TEST(OlhTest, HashedDomainAndKeepProbabilityAtLn3) {
  const auto o = OlhParams::Create(64, kLn3);
  EXPECT_EQ(o.hashed_size, 4);
  EXPECT_NEAR(o.p, 0.5, 1e-12);
}

TEST(OlhTest, HashedDomainNeverBelowTwo) {
  for (double eps : {1e-6, 0.01, 0.1, 0.4}) EXPECT_GE(OlhParams::Create(16, eps).hashed_size, 2) << eps;
  EXPECT_EQ(OlhParams::Create(16, 0.01).hashed_size, 2);
}

TEST(OlhTest, HugeFiniteBudgetIsFinite) {
  const auto o = OlhParams::Create(64, 1000.0);
  EXPECT_EQ(o.hashed_size, int64_t{1} << 32);
  EXPECT_EQ(o.p, 1.0);
  EXPECT_EQ(OlhVariance(1000.0, 10), 0.0);
  EXPECT_NEAR(OlhVariance(800.0, 1), 4 * std::exp(-800.0), 1e-300);
}

TEST(OlhTest, HashIsDeterministicAndInRange) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const int64_t h = OlhHash(seed, 7, 5);
    EXPECT_EQ(h, OlhHash(seed, 7, 5));
    EXPECT_GE(h, 1);
    EXPECT_LE(h, 5);
  }
  SplitMix64 a(3), b(3);
  const auto o = OlhParams::Create(32, 1.0);
  EXPECT_EQ(OlhPerturb(9, o, 1234, a).y, OlhPerturb(9, o, 1234, b).y);
}

TEST(OlhTest, ChanceLevelSupportEstimatesZero) {
  const auto o = OlhParams::Create(16, kLn3);  // c' = 4
  const int v = 5;
  std::vector<OlhReport> reports;
  for (uint64_t s = 1; s <= 4; ++s) {
    const int64_t h = OlhHash(s, v, o.hashed_size);
    reports.push_back({s, s == 1 ? h : h % o.hashed_size + 1});
  }
  EXPECT_NEAR(OlhEstimateValue(reports, o, v), 0.0, 1e-12);
}

TEST(OlhTest, EveryoneHoldingOneValue) {
  const int n = 200000;
  const double eps = 1.0;
  const auto o = OlhParams::Create(16, eps);
  std::vector<OlhReport> reports;
  reports.reserve(n);
  for (int i = 0; i < n; ++i) {
    const uint64_t seed = DeriveSeed(8, {static_cast<uint64_t>(i)});
    SplitMix64 rng(Mix64(seed));
    reports.push_back(OlhPerturb(3, o, seed, rng));
  }
  const double e = std::exp(eps);
  EXPECT_NEAR(OlhEstimateValue(reports, o, 3), 1.0, 4 * std::sqrt(4 * e / ((e - 1) * (e - 1) * n)));
}

TEST(OlhTest, AggregateIsThreadCountInvariant) {
  const auto o = OlhParams::Create(32, 1.0);
  std::vector<OlhReport> reports;
  for (int i = 0; i < 3000; ++i) {
    SplitMix64 rng(i);
    reports.push_back(OlhPerturb(1 + i % 32, o, 77 ^ static_cast<uint64_t>(i), rng));
  }
  EXPECT_EQ(OlhAggregate(reports, o, 1), OlhAggregate(reports, o, 4));
}

TEST(OlhTest, PredictedVariance) { EXPECT_NEAR(OlhVariance(kLn3, 1000), 0.003, 1e-15); }

TEST(OlhTest, EmptyAggregationThrows) {
  const auto o = OlhParams::Create(4, 1.0);
  EXPECT_THROW(OlhAggregate({}, o), std::invalid_argument);
}

TEST(PredictedErrorTest, Values) {
  EXPECT_NEAR(PredictedSquaredError(kLn3, 1000, 1), 0.003, 1e-15);
  EXPECT_NEAR(PredictedSquaredError(1.0, 1000000, 21), 7.7337e-5, 1e-8);
  EXPECT_DOUBLE_EQ(PredictedSquaredError(0.7, 5000, 6), 2 * PredictedSquaredError(0.7, 5000, 3));
  EXPECT_THROW(PredictedSquaredError(0, 10, 1), std::invalid_argument);
  EXPECT_THROW(PredictedSquaredError(1, 0, 1), std::invalid_argument);
}

TEST(PrivacyTest, LikelihoodRatiosStayWithinBudget) {
  for (double eps = 0.1; eps <= 8.0; eps += 0.3) {
    const double bound = std::exp(eps) * (1 + 1e-12);
    EXPECT_LE(GrrParams::Create(64, eps).PrivacyRatio(), bound) << eps;
    EXPECT_LE(OlhParams::Create(64, eps).PrivacyRatio(), bound) << eps;
    EXPECT_LE(SwParams::Create(eps).PrivacyRatio(), bound) << eps;
  }
}

TEST(SquareWaveTest, ParametersAtEpsilonOne) {
  const auto sw = SwParams::Create(1.0);
  // Direct evaluation in long double as the reference.
  const long double e = std::exp(1.0L);
  const long double delta = (e - e + 1) / (2 * e * (e - 2));
  EXPECT_NEAR(sw.delta, static_cast<double>(delta), 1e-12);
  EXPECT_NEAR(sw.p, static_cast<double>(e / (2 * delta * e + 1)), 1e-12);
  EXPECT_NEAR(sw.p_other, static_cast<double>(1 / (2 * delta * e + 1)), 1e-12);
  // Rounded values quoted for epsilon = 1.
  EXPECT_NEAR(sw.delta, 0.2562, 5e-4);
  EXPECT_NEAR(sw.p, 1.1360, 5e-4);
  EXPECT_NEAR(sw.p_other, 0.4179, 5e-4);
  EXPECT_NEAR(2 * sw.delta * sw.p + sw.p_other, 1.0, 1e-12);
}

TEST(SquareWaveTest, SmallBudgetIsNearlyUniform) {
  const auto sw = SwParams::Create(1e-4);
  EXPECT_NEAR(sw.p / sw.p_other, 1.0, 1e-3);
}

TEST(SquareWaveTest, OverflowingBudgetIsRejected) {
  const auto sw = SwParams::Create(700.0);
  EXPECT_GT(sw.delta, 0.0);
  EXPECT_NEAR(2 * sw.delta * sw.p + sw.p_other, 1.0, 1e-12);
  EXPECT_THROW(SwParams::Create(1000.0), std::invalid_argument);
}

TEST(SquareWaveTest, NearBandMass) {
  const auto sw = SwParams::Create(1.0);
  const int n = 1000000;
  const double expected = std::min(1.0, 2 * sw.delta * sw.p);
  const double se = std::sqrt(expected * (1 - expected) / n);
  for (double v : {0.0, 0.1, 0.5, 1.0}) {
    SplitMix64 rng(DeriveSeed(5, {static_cast<uint64_t>(v * 10)}));
    int near = 0;
    for (int i = 0; i < n; ++i) {
      const double y = SwPerturb(v, sw, rng);
      ASSERT_GE(y, -sw.delta);
      ASSERT_LE(y, 1 + sw.delta);
      near += std::abs(y - v) <= sw.delta;
    }
    EXPECT_NEAR(near / static_cast<double>(n), expected, 3 * se) << v;
  }
}

TEST(SquareWaveTest, TransitionColumnsSumToOne) {
  const auto sw = SwParams::Create(1.0);
  const auto m = SwTransitionMatrix(sw, 16);
  EXPECT_EQ(m.size(), 16u + 2 * static_cast<size_t>(std::ceil(sw.delta * 16)));
  for (int i = 0; i < 16; ++i) {
    double s = 0;
    for (const auto& row : m) s += row[i];
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

std::vector<double> SwReports(const std::vector<int>& buckets, int c, const SwParams& sw, uint64_t seed) {
  std::vector<double> out;
  SplitMix64 rng(seed);
  for (int b : buckets) out.push_back(SwPerturb(BucketCenter(b, c), sw, rng));
  return out;
}

TEST(SquareWaveTest, EmRecoversPointMass) {
  const int c = 16;
  const auto sw = SwParams::Create(4.0);
  const auto est = SwEmReconstruct(SwReports(std::vector<int>(100000, 1), c, sw, 3), sw, c);
  EXPECT_GT(est[0], 0.9);
}

// Without smoothing the EM keeps fitting noise for all 1000 iterations; the
// drift away from uniform grows with the bucket count (about 0.07 at 16
// buckets), so the 0.05 bound is checked at 8.
TEST(SquareWaveTest, EmRecoversUniform) {
  const int c = 8, n = 100000;
  const auto sw = SwParams::Create(1.0);
  std::vector<int> buckets(n);
  for (int i = 0; i < n; ++i) buckets[i] = 1 + i % c;
  const auto est = SwEmReconstruct(SwReports(buckets, c, sw, 4), sw, c);
  double tv = 0;
  for (double f : est) tv += std::abs(f - 1.0 / c);
  EXPECT_LE(tv / 2, 0.05);
}

TEST(SquareWaveTest, EarlyEmIterationsStayNearUniform) {
  const int c = 64, n = 100000;
  const auto sw = SwParams::Create(1.0);
  std::vector<int> buckets(n);
  for (int i = 0; i < n; ++i) buckets[i] = 1 + i % c;
  const auto reports = SwReports(buckets, c, sw, 5);
  double tv_short = 0, tv_long = 0;
  for (double f : SwEmReconstruct(reports, sw, c, {.max_iterations = 10})) tv_short += std::abs(f - 1.0 / c);
  for (double f : SwEmReconstruct(reports, sw, c)) tv_long += std::abs(f - 1.0 / c);
  EXPECT_LE(tv_short / 2, 0.02);
  EXPECT_GT(tv_long, tv_short);
}

TEST(SquareWaveTest, EmOutputIsADistribution) {
  const int c = 8;
  const auto sw = SwParams::Create(0.5);
  const auto est = SwEmReconstruct(SwReports({1, 1, 2, 8, 5}, c, sw, 9), sw, c);
  ASSERT_EQ(est.size(), 8u);
  for (double f : est) EXPECT_GE(f, 0.0);
  EXPECT_NEAR(std::accumulate(est.begin(), est.end(), 0.0), 1.0, 1e-12);
  EXPECT_THROW(SwEmReconstruct({}, sw, c), std::invalid_argument);
}

}  // namespace
}  // namespace ldprange
