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

#include "ldprange/grid.h"
#include "ldprange/postprocess.h"
#include "ldprange/random.h"

namespace ldprange {
namespace {

double Sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

void ExpectVectorNear(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << i;
}

TEST(NormSubTest, OnePass) { ExpectVectorNear(NormSubCopy({0.5, 0.6, -0.1}), {0.45, 0.55, 0.0}, 1e-12); }

TEST(NormSubTest, TwoPasses) { ExpectVectorNear(NormSubCopy({1.5, 0.01, -0.51}), {1.0, 0.0, 0.0}, 1e-12); }

TEST(NormSubTest, DistributionIsAFixedPoint) {
  const std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
  ExpectVectorNear(NormSubCopy(p), p, 1e-15);
}

TEST(NormSubTest, AllNonPositiveFallsBackToUniform) {
  ExpectVectorNear(NormSubCopy({-0.2, 0.0, -1.0, -0.1}), {0.25, 0.25, 0.25, 0.25}, 0);
}

TEST(NormSubTest, RejectsNonFinite) {
  std::vector<double> v = {0.5, std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW(NormSub(v), std::invalid_argument);
}

TEST(NormSubTest, RandomInputsBecomeDistributionsIdempotently) {
  SplitMix64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + UniformBelow(rng, 40));
    for (double& x : v) x = UniformUnit(rng) * 0.6 - 0.2;
    const auto once = NormSubCopy(v);
    for (double x : once) EXPECT_GE(x, 0.0);
    EXPECT_NEAR(Sum(once), 1.0, 1e-9);
    ExpectVectorNear(NormSubCopy(once), once, 1e-12);
  }
}

TEST(ConsistencyWeightsTest, InverseSetSizes) {
  const std::vector<int> sizes = {4, 2, 2};
  ExpectVectorNear(ConsistencyWeights(sizes), {0.2, 0.4, 0.4}, 1e-15);
}

// HDG, d = 3, c = 16, g1 = 8, g2 = 2.
GridSet SmallHdg() {
  GridSet g{.mode = GridMode::kHdg, .num_attributes = 3, .domain_size = 16, .g1 = 8, .g2 = 2};
  for (int a = 0; a < 3; ++a) g.grids_1d.push_back({a, 8, 16, std::vector<double>(8, 1.0 / 8)});
  for (const auto& [j, k] : AttributePairs(3)) g.grids_2d.push_back({j, k, 2, 16, std::vector<double>(4, 0.25)});
  return g;
}

TEST(AttributeConsistencyTest, WeightedAverageExample) {
  GridSet g = SmallHdg();
  // Attribute 0, first coarse chunk: 1-D mass 0.30, pair (0,1) 0.24, pair (0,2) 0.26.
  g.grids_1d[0].freqs = {0.075, 0.075, 0.075, 0.075, 0.175, 0.175, 0.175, 0.175};
  g.grids_2d[0].freqs = {0.12, 0.12, 0.38, 0.38};
  g.grids_2d[1].freqs = {0.13, 0.13, 0.37, 0.37};
  AttributeConsistency(g, 0);
  for (int s = 0; s < 4; ++s) EXPECT_NEAR(g.grids_1d[0].freqs[s], 0.065, 1e-12);
  const auto marginals = CoarseMarginals(g, 0);
  for (const auto& m : marginals) {
    EXPECT_NEAR(m[0], 0.26, 1e-12);
    EXPECT_NEAR(m[1], 0.74, 1e-12);
  }
}

TEST(AttributeConsistencyTest, AgreeingGridsAreUntouched) {
  GridSet g = SmallHdg();
  const GridSet before = g;
  for (int a = 0; a < 3; ++a) AttributeConsistency(g, a);
  for (size_t i = 0; i < 3; ++i) ExpectVectorNear(g.grids_2d[i].freqs, before.grids_2d[i].freqs, 1e-15);
  for (size_t i = 0; i < 3; ++i) ExpectVectorNear(g.grids_1d[i].freqs, before.grids_1d[i].freqs, 1e-15);
}

GridSet RandomHdg(uint64_t seed, int d, int c, int g1, int g2) {
  SplitMix64 rng(seed);
  GridSet g{.mode = GridMode::kHdg, .num_attributes = d, .domain_size = c, .g1 = g1, .g2 = g2};
  auto noisy = [&](int cells) {
    std::vector<double> v(cells);
    for (double& x : v) x = UniformUnit(rng) * 2.0 / cells - 0.3 / cells;
    const double s = Sum(v);
    for (double& x : v) x /= s;  // equal total mass across grids
    return v;
  };
  for (int a = 0; a < d; ++a) g.grids_1d.push_back({a, g1, c, noisy(g1)});
  for (const auto& [j, k] : AttributePairs(d)) g.grids_2d.push_back({j, k, g2, c, noisy(g2 * g2)});
  return g;
}

TEST(AttributeConsistencyTest, AgreementAndMassPreservation) {
  GridSet g = RandomHdg(3, 4, 32, 16, 4);
  std::vector<double> mass;
  for (const auto& x : g.grids_2d) mass.push_back(Sum(x.freqs));
  AttributeConsistency(g, 2);
  const auto marginals = CoarseMarginals(g, 2);
  for (size_t i = 1; i < marginals.size(); ++i) ExpectVectorNear(marginals[i], marginals[0], 1e-12);
  for (size_t i = 0; i < g.grids_2d.size(); ++i) EXPECT_NEAR(Sum(g.grids_2d[i].freqs), mass[i], 1e-12);
}

TEST(AttributeConsistencyTest, LaterStepsKeepEarlierAgreement) {
  GridSet g = RandomHdg(4, 5, 64, 16, 4);
  for (int a = 0; a < 5; ++a) AttributeConsistency(g, a);
  EXPECT_LE(MaxConsistencyResidual(g), 1e-9);
}

TEST(AttributeConsistencyTest, TdgUsesOnlyPairGrids) {
  GridSet g = RandomHdg(5, 3, 16, 4, 4);
  g.mode = GridMode::kTdg;
  g.grids_1d.clear();
  for (int a = 0; a < 3; ++a) AttributeConsistency(g, a);
  EXPECT_LE(MaxConsistencyResidual(g), 1e-9);
}

TEST(FullPostprocessTest, SingleGridReducesToNormSub) {
  GridSet g{.mode = GridMode::kTdg, .num_attributes = 2, .domain_size = 8, .g2 = 2};
  g.grids_2d.push_back({0, 1, 2, 8, {0.7, -0.1, 0.5, -0.1}});
  const auto expected = NormSubCopy(g.grids_2d[0].freqs);
  FullPostprocess(g);
  ExpectVectorNear(g.grids_2d[0].freqs, expected, 1e-12);
}

TEST(FullPostprocessTest, ConsistentGridsUnchanged) {
  GridSet g = SmallHdg();
  const GridSet before = g;
  FullPostprocess(g);
  for (size_t i = 0; i < 3; ++i) ExpectVectorNear(g.grids_2d[i].freqs, before.grids_2d[i].freqs, 1e-15);
}

TEST(FullPostprocessTest, OutputsAreDistributions) {
  GridSet g = RandomHdg(6, 4, 32, 8, 4);
  FullPostprocess(g, 3);
  for (const auto& x : g.grids_1d) {
    for (double f : x.freqs) EXPECT_GE(f, 0.0);
    EXPECT_NEAR(Sum(x.freqs), 1.0, 1e-9);
  }
  for (const auto& x : g.grids_2d) {
    for (double f : x.freqs) EXPECT_GE(f, 0.0);
    EXPECT_NEAR(Sum(x.freqs), 1.0, 1e-9);
  }
  EXPECT_THROW(FullPostprocess(g, 0), std::invalid_argument);
}

TEST(FullPostprocessTest, ResidualSmallOnRealCollection) {
  const Dataset data = GenerateSynthetic(
      {.num_records = 100000, .num_attributes = 4, .domain_size = 64, .covariance = 0.8, .seed = 9});
  const auto plan = ChooseGranularities(100000, 4, 1.0, 64, GridMode::kHdg);
  GridSet g = BuildGrids(data, plan, 1.0, 17);
  FullPostprocess(g);
  EXPECT_LE(MaxConsistencyResidual(g), 1e-3);
}

}  // namespace
}  // namespace ldprange
