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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ldprange/experiment.h"
#include "ldprange/frequency_oracle.h"
#include "ldprange/granularity.h"
#include "ldprange/grid.h"
#include "ldprange/hierarchy.h"
#include "ldprange/postprocess.h"
#include "ldprange/random.h"
#include "ldprange/range_estimation.h"
#include "ldprange/response_matrix.h"
#include "ldprange/square_wave.h"

namespace ldprange {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

template <typename... Args>
std::string Fmt(const char* format, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// ---- 1: recommended granularity table (HDG, alpha1 = 0.7, alpha2 = 0.03) ----

struct TableRow {
  int d;
  double lg_n;
  int cells[10][2];
};

// Columns are epsilon = 0.2, 0.4, ..., 2.0.
const TableRow kTable[] = {
    {3, 6.0, {{8, 2}, {16, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 8}, {64, 8}, {64, 8}, {64, 8}}},
    {4, 6.0, {{8, 2}, {16, 2}, {16, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 8}, {64, 8}}},
    {5, 6.0, {{8, 2}, {16, 2}, {16, 4}, {16, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 8}}},
    {6, 6.0, {{8, 2}, {16, 2}, {16, 2}, {16, 4}, {16, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}}},
    {7, 6.0, {{8, 2}, {8, 2}, {16, 2}, {16, 4}, {16, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}}},
    {8, 6.0, {{8, 2}, {8, 2}, {16, 2}, {16, 2}, {16, 4}, {16, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}}},
    {9, 6.0, {{8, 2}, {8, 2}, {16, 2}, {16, 2}, {16, 4}, {16, 4}, {16, 4}, {32, 4}, {32, 4}, {32, 4}}},
    {10, 6.0, {{4, 2}, {8, 2}, {8, 2}, {16, 2}, {16, 2}, {16, 4}, {16, 4}, {32, 4}, {32, 4}, {32, 4}}},
    {6, 5.0, {{4, 2}, {4, 2}, {8, 2}, {8, 2}, {8, 2}, {16, 2}, {16, 2}, {16, 2}, {16, 2}, {16, 4}}},
    {6, 5.2, {{4, 2}, {8, 2}, {8, 2}, {8, 2}, {16, 2}, {16, 2}, {16, 2}, {16, 4}, {16, 4}, {16, 4}}},
    {6, 5.4, {{4, 2}, {8, 2}, {8, 2}, {16, 2}, {16, 2}, {16, 2}, {16, 4}, {16, 4}, {16, 4}, {32, 4}}},
    {6, 5.6, {{4, 2}, {8, 2}, {8, 2}, {16, 2}, {16, 2}, {16, 4}, {16, 4}, {32, 4}, {32, 4}, {32, 4}}},
    {6, 5.8, {{8, 2}, {8, 2}, {16, 2}, {16, 2}, {16, 4}, {16, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}}},
    {6, 6.0, {{8, 2}, {16, 2}, {16, 2}, {16, 4}, {16, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}}},
    {6, 6.2, {{8, 2}, {16, 2}, {16, 4}, {16, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 8}}},
    {6, 6.4, {{8, 2}, {16, 2}, {16, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 8}, {64, 8}, {64, 8}}},
    {6, 6.6, {{16, 2}, {16, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 4}, {32, 8}, {64, 8}, {64, 8}, {64, 8}}},
    {6, 6.8, {{16, 2}, {16, 4}, {32, 4}, {32, 4}, {32, 4}, {64, 8}, {64, 8}, {64, 8}, {64, 8}, {64, 8}}},
    {6, 7.0, {{16, 2}, {32, 4}, {32, 4}, {32, 4}, {64, 8}, {64, 8}, {64, 8}, {64, 8}, {64, 8}, {64, 8}}},
};

Outcome GranularityTable(const std::string& report_path) {
  int total = 0, matched = 0;
  bool golden = true;
  std::ostringstream report;
  report << "# Granularity guideline vs. recommended table\n\n"
         << "HDG, c = 64, alpha1 = 0.7, alpha2 = 0.03, n = round(10^lg n).\n\n"
         << "| d | lg n | epsilon | table (g1, g2) | computed (g1, g2) | raw (g1, g2) |\n"
         << "|---|------|---------|----------------|-------------------|--------------|\n";
  for (const auto& row : kTable) {
    const auto n = static_cast<int64_t>(std::llround(std::pow(10.0, row.lg_n)));
    for (int col = 0; col < 10; ++col) {
      const double eps = 0.2 * (col + 1);
      const auto plan = ChooseGranularities(n, row.d, eps, 64, GridMode::kHdg);
      const bool ok = plan.g1 == row.cells[col][0] && plan.g2 == row.cells[col][1];
      ++total;
      matched += ok;
      if (!ok) {
        report << "| " << row.d << " | " << row.lg_n << " | " << eps << " | (" << row.cells[col][0] << ", "
               << row.cells[col][1] << ") | (" << plan.g1 << ", " << plan.g2 << ") | ("
               << Fmt("%.2f, %.2f", plan.raw_g1, plan.raw_g2) << ") |\n";
      }
    }
  }
  const struct {
    int d;
    double eps;
    int g1, g2;
  } goldens[] = {{6, 1.0, 16, 4}, {3, 0.2, 8, 2}, {3, 2.0, 64, 8}};
  for (const auto& g : goldens) {
    const auto plan = ChooseGranularities(1000000, g.d, g.eps, 64, GridMode::kHdg);
    golden = golden && plan.g1 == g.g1 && plan.g2 == g.g2;
  }
  report << "\n" << matched << " of " << total << " cells match ("
         << Fmt("%.1f", 100.0 * matched / total) << "%).\n";
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    out << report.str();
  }
  const double share = static_cast<double>(matched) / total;
  return {golden && share >= 0.9, Fmt("golden rows %s; %d/%d cells match (%.1f%%)", golden ? "exact" : "WRONG",
                                      matched, total, 100 * share)};
}

// ---- 2: OLH unbiasedness and variance ----

Outcome OlhUnbiasedVariance() {
  const int c = 64, repeats = 50;
  const int64_t n = 200000;
  const double eps = 1.0;
  const Dataset data = GenerateSynthetic({.num_records = n, .num_attributes = 2, .domain_size = c, .seed = 2});
  std::vector<double> truth(c, 0.0);
  for (int64_t i = 0; i < n; ++i) truth[data.value(i, 0) - 1] += 1.0 / n;

  const auto params = OlhParams::Create(c, eps);
  std::vector<double> sum(c, 0.0), sum_sq(c, 0.0);
  std::vector<OlhReport> reports(n);
  for (int r = 0; r < repeats; ++r) {
    const uint64_t stream = DeriveSeed(7, {static_cast<uint64_t>(r)});
    for (int64_t i = 0; i < n; ++i) {
      const uint64_t hash_seed = stream ^ static_cast<uint64_t>(i);
      SplitMix64 rng(Mix64(hash_seed));
      reports[i] = OlhPerturb(data.value(i, 0), params, hash_seed, rng);
    }
    const auto est = OlhAggregate(reports, params);
    for (int v = 0; v < c; ++v) {
      sum[v] += est[v];
      sum_sq[v] += est[v] * est[v];
    }
  }
  const double predicted = OlhVariance(eps, n);
  const double bound = 4 * std::sqrt(predicted / repeats);
  double worst_bias = 0, pooled = 0;
  for (int v = 0; v < c; ++v) {
    const double mean = sum[v] / repeats;
    worst_bias = std::max(worst_bias, std::abs(mean - truth[v]));
    pooled += (sum_sq[v] - repeats * mean * mean) / (repeats - 1) / c;
  }
  const double ratio = pooled / predicted;
  return {worst_bias < bound && ratio > 0.75 && ratio < 1.25,
          Fmt("max |bias| %.2e < %.2e; pooled variance / predicted = %.3f", worst_bias, bound, ratio)};
}

// ---- 3: post-processing contracts ----

Outcome PostprocessContracts() {
  const int64_t n = 100000;
  const Dataset data =
      GenerateSynthetic({.num_records = n, .num_attributes = 4, .domain_size = 64, .covariance = 0.8, .seed = 3});
  const auto plan = ChooseGranularities(n, 4, 1.0, 64, GridMode::kHdg);
  GridSet grids = BuildGrids(data, plan, 1.0, 33);
  FullPostprocess(grids);
  double min_entry = 0, worst_mass = 0;
  auto check = [&](const std::vector<double>& f) {
    double s = 0;
    for (double x : f) {
      min_entry = std::min(min_entry, x);
      s += x;
    }
    worst_mass = std::max(worst_mass, std::abs(s - 1));
  };
  for (const auto& g : grids.grids_1d) check(g.freqs);
  for (const auto& g : grids.grids_2d) check(g.freqs);
  const double residual = MaxConsistencyResidual(grids);
  return {min_entry >= 0 && worst_mass <= 1e-6 && residual <= 1e-3,
          Fmt("g1=%d g2=%d; min entry %.2e, max |mass-1| %.2e, residual %.2e", plan.g1, plan.g2, min_entry,
              worst_mass, residual)};
}

// ---- 4: response matrix ----

Outcome ResponseMatrixOracle() {
  const Grid1D gj{0, 2, 2, {0.8, 0.2}};
  const Grid1D gk{1, 2, 2, {0.5, 0.5}};
  const auto m = BuildResponseMatrix(gj, gk, {0, 1, 1, 2, {1.0}});
  const double want[4] = {0.4, 0.4, 0.1, 0.1};
  double example_err = 0;
  for (int i = 0; i < 4; ++i) example_err = std::max(example_err, std::abs(m.entries()[i] - want[i]));

  // Consistent grids with g2 = c: the fit must reproduce the 2-D grid.
  const int c = 16;
  SplitMix64 rng(4);
  std::vector<double> joint(c * c);
  double s = 0;
  for (double& x : joint) s += (x = UniformUnit(rng) + 0.02);
  Grid1D a{0, 4, c, std::vector<double>(4, 0.0)}, b{1, 4, c, std::vector<double>(4, 0.0)};
  Grid2D ab{0, 1, c, c, std::vector<double>(c * c, 0.0)};
  for (int r = 1; r <= c; ++r) {
    for (int k = 1; k <= c; ++k) {
      const double f = joint[(r - 1) * c + k - 1] / s;
      a.freqs[CellIndex(r, 4, c) - 1] += f;
      b.freqs[CellIndex(k, 4, c) - 1] += f;
      ab.freqs[(r - 1) * c + k - 1] = f;
    }
  }
  const auto fit = BuildResponseMatrix(a, b, ab);
  double grid_err = 0;
  for (int i = 0; i < c * c; ++i) grid_err = std::max(grid_err, std::abs(fit.entries()[i] - ab.freqs[i]));
  return {example_err <= 1e-6 && grid_err <= 1e-6,
          Fmt("example max error %.2e; g2=c max error %.2e after %d sweeps", example_err, grid_err, fit.sweeps())};
}

// ---- 5: lambda-D fixed points ----

std::vector<PairAnswer> ProductPairs(const std::vector<double>& mass) {
  std::vector<PairAnswer> pairs;
  const int lambda = static_cast<int>(mass.size());
  for (int a = 0; a < lambda; ++a) {
    for (int b = a + 1; b < lambda; ++b) {
      PairAnswer pa{.a = a, .b = b};
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) pa.quadrant[x][y] = (x ? mass[a] : 1 - mass[a]) * (y ? mass[b] : 1 - mass[b]);
      }
      pairs.push_back(pa);
    }
  }
  return pairs;
}

Outcome LambdaFixedPoints() {
  bool uniform_ok = true;
  for (int lambda = 3; lambda <= 6; ++lambda) {
    for (bool full : {false, true}) {
      const auto est =
          AnswerLambda(lambda, ProductPairs(std::vector<double>(lambda, 0.5)), {.full_constraints = full});
      for (double z : est.z) uniform_ok = uniform_ok && z == std::ldexp(1.0, -lambda);
      uniform_ok = uniform_ok && est.sweeps == 1;
    }
  }
  SplitMix64 rng(5);
  double full_dev = 0, literal_dev = 0;
  for (int lambda = 3; lambda <= 4; ++lambda) {
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> mass(lambda);
      double product = 1;
      for (double& m : mass) product *= (m = 0.05 + 0.9 * UniformUnit(rng));
      const auto pairs = ProductPairs(mass);
      full_dev = std::max(full_dev, std::abs(AnswerLambda(lambda, pairs, {.tolerance = 1e-12, .full_constraints = true})
                                                 .answer - product));
      literal_dev = std::max(literal_dev, std::abs(AnswerLambda(lambda, pairs, {.tolerance = 1e-12}).answer - product));
    }
  }
  return {uniform_ok && full_dev <= 1e-6,
          Fmt("uniform: exact with no change (both modes); product: max deviation %.2e with all four quadrants "
              "constrained, %.3f with the default interval-only constraints",
              full_dev, literal_dev)};
}

// ---- 6: 2-D worked example ----

Outcome WorkedExample() {
  // c = 8, g2 = 2: cell (2,2) lies inside the query, cell (1,2) shares 4 of
  // its 16 values with it.
  const Grid2D g{0, 1, 2, 8, {0.15, 0.2, 0.35, 0.3}};
  const double got = Answer2D(g, Interval{4, 8}, Interval{5, 8});
  const double want = g.at(1, 1) + 0.25 * g.at(0, 1);
  return {got == want, Fmt("answer %.17g, expected %.17g", got, want)};
}

// ---- 7: desk-scale ordering ----

Outcome DeskScaleOrdering(int threads) {
  ExperimentConfig config;
  config.dataset = {.type = "synthetic",
                    .distribution = SyntheticDistribution::kNormal,
                    .num_records = 100000,
                    .num_attributes = 3,
                    .domain_size = 64,
                    .covariance = 0.8};
  config.approaches = {"HDG", "TDG", "MSW", "HIO", "Uni"};
  config.epsilons = {1.0};
  config.lambdas = {2};
  config.volume = 0.5;
  config.num_queries = 200;
  config.repeats = 10;
  config.seed = 1;
  config.threads = threads;
  const auto result = RunExperiment(config);
  auto cell = [&](const std::string& name) -> const CellResult& {
    for (const auto& c : result.cells) {
      if (c.approach == name) return c;
    }
    throw std::logic_error("missing " + name);
  };
  const auto& hdg = cell("HDG");
  const auto& tdg = cell("TDG");
  int close = 0;
  for (int r = 0; r < config.repeats; ++r) close += hdg.mae_samples[r] <= 1.1 * tdg.mae_samples[r];
  const bool pass = hdg.mae_mean < cell("MSW").mae_mean && hdg.mae_mean < cell("Uni").mae_mean &&
                    hdg.mae_mean < cell("HIO").mae_mean && close >= 7;
  std::ostringstream d;
  d.precision(4);
  for (const auto& c : result.cells) d << c.approach << " " << c.mae_mean << "; ";
  d << "HDG <= 1.1 TDG in " << close << "/10";
  return {pass, "MAE " + d.str()};
}

// ---- 8: LDP accounting ----

Outcome LdpAccounting(int threads) {
  bool ok = true;
  double worst = 0;
  for (double eps : {0.05, 0.2, 0.5, 1.0, 1.7, 2.0, 4.0, 8.0}) {
    const double bound = std::exp(eps) * (1 + 1e-12);
    for (int c : {2, 16, 64}) {
      const auto grr = GrrParams::Create(c, eps);
      worst = std::max(worst, grr.p / grr.p_other / std::exp(eps));
      ok = ok && grr.p / grr.p_other <= bound;
    }
    const auto olh = OlhParams::Create(64, eps);
    const double q = (1 - olh.p) / static_cast<double>(olh.hashed_size - 1);
    worst = std::max(worst, olh.p / q / std::exp(eps));
    ok = ok && olh.p / q <= bound;
    const auto sw = SwParams::Create(eps);
    worst = std::max(worst, sw.p / sw.p_other / std::exp(eps));
    ok = ok && sw.p / sw.p_other <= bound;
  }

  // The harness throws unless every approach collected exactly n reports and
  // stayed within its budget.
  ExperimentConfig config;
  config.dataset.num_records = 20000;
  config.dataset.num_attributes = 3;
  config.dataset.domain_size = 16;
  config.approaches = {"HDG", "TDG", "CALM", "HIO", "LHIO", "MSW", "Uni"};
  config.epsilons = {0.5, 1.0, 2.0};
  config.lambdas = {2, 3};
  config.num_queries = 20;
  config.repeats = 2;
  config.threads = threads;
  const auto result = RunExperiment(config);
  int cells = 0;
  for (const auto& c : result.cells) {
    ok = ok && c.reports == (c.approach == "Uni" ? 0 : result.num_records);
    ++cells;
  }
  return {ok, Fmt("max (p/p')/e^eps = %.12f over GRR/OLH/SW; %d harness cells with one report per user", worst,
                  cells)};
}

// ---- 9: HIO decomposition ----

Outcome HioDecomposition() {
  const Hierarchy1D h(4, 64);
  SplitMix64 rng(9);
  size_t most = 0;
  bool exact = true;
  for (int trial = 0; trial < 1000; ++trial) {
    int lo = 1 + static_cast<int>(UniformBelow(rng, 64));
    int hi = 1 + static_cast<int>(UniformBelow(rng, 64));
    if (lo > hi) std::swap(lo, hi);
    const auto nodes = h.Decompose({lo, hi});
    most = std::max(most, nodes.size());
    int next = lo;
    for (const auto& node : nodes) {
      const Interval iv = h.NodeInterval(node);
      exact = exact && iv.lo == next;
      next = iv.hi + 1;
    }
    exact = exact && next == hi + 1;
  }
  return {most <= 18 && exact,
          Fmt("max nodes %zu (bound 18); covers %s", most, exact ? "exact" : "BROKEN")};
}

}  // namespace
}  // namespace ldprange

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string report;
  int threads = 1;
  app.add_option("--report", report, "where to write the granularity mismatch report");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  using ldprange::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"granularity table", [&] { return ldprange::GranularityTable(report); }},
      {"OLH unbiasedness and variance", ldprange::OlhUnbiasedVariance},
      {"post-processing contracts", ldprange::PostprocessContracts},
      {"response matrix oracle", ldprange::ResponseMatrixOracle},
      {"lambda-D fixed points", ldprange::LambdaFixedPoints},
      {"2-D worked example", ldprange::WorkedExample},
      {"desk-scale ordering", [&] { return ldprange::DeskScaleOrdering(threads); }},
      {"LDP accounting", [&] { return ldprange::LdpAccounting(threads); }},
      {"HIO decomposition", ldprange::HioDecomposition},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !outcome.pass;
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
