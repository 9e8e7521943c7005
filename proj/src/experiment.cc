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

#include "ldprange/experiment.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "ldprange/calm.h"
#include "ldprange/grid_approach.h"
#include "ldprange/hierarchy.h"
#include "ldprange/lhio.h"
#include "ldprange/msw.h"
#include "ldprange/parallel.h"
#include "ldprange/query.h"
#include "ldprange/random.h"

namespace ldprange {

namespace {

constexpr uint64_t kDataStream = 0xda7a;
constexpr uint64_t kWorkloadStream = 0x3041;
constexpr uint64_t kApproachStream = 0xa99;

// Stable per-approach stream ids, so adding an approach to a config leaves
// the others' randomness untouched.
uint64_t ApproachCode(const std::string& canonical) {
  static const std::vector<std::string> kNames = {"HDG", "TDG", "CALM", "HIO", "LHIO", "MSW", "Uni"};
  return static_cast<uint64_t>(std::find(kNames.begin(), kNames.end(), canonical) - kNames.begin());
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

}  // namespace

double Mae(const std::vector<double>& estimates, const std::vector<double>& truths) {
  if (estimates.size() != truths.size()) {
    throw std::invalid_argument("MAE inputs differ in length: " + std::to_string(estimates.size()) + " vs " +
                                std::to_string(truths.size()));
  }
  if (estimates.empty()) throw std::invalid_argument("MAE needs at least one query");
  double sum = 0;
  for (size_t i = 0; i < estimates.size(); ++i) sum += std::abs(estimates[i] - truths[i]);
  return sum / static_cast<double>(estimates.size());
}

std::string CanonicalApproachName(const std::string& name) {
  const std::string l = Lower(name);
  if (l == "hdg") return "HDG";
  if (l == "tdg") return "TDG";
  if (l == "calm") return "CALM";
  if (l == "hio") return "HIO";
  if (l == "lhio") return "LHIO";
  if (l == "msw") return "MSW";
  if (l == "uni") return "Uni";
  throw std::invalid_argument("unknown approach '" + name + "' (expected HDG, TDG, CALM, HIO, LHIO, MSW or Uni)");
}

void ExperimentConfig::Validate() const {
  if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  if (epsilons.empty()) throw std::invalid_argument("at least one epsilon is required");
  for (double e : epsilons) {
    if (!(e > 0)) throw std::invalid_argument("epsilon must be positive");
  }
  if (approaches.empty()) throw std::invalid_argument("at least one approach is required");
  for (const auto& a : approaches) CanonicalApproachName(a);
  if (lambdas.empty()) throw std::invalid_argument("at least one query dimension is required");
  for (int l : lambdas) {
    if (l < 1) throw std::invalid_argument("query dimension must be at least 1");
    if (dataset.type == "synthetic" && l > dataset.num_attributes) {
      throw std::invalid_argument("query dimension " + std::to_string(l) + " exceeds the attribute count");
    }
  }
  if (!(volume > 0 && volume <= 1)) throw std::invalid_argument("volume must be in (0, 1]");
  if (num_queries < 1) throw std::invalid_argument("num_queries must be at least 1");
  if (g1 < 0 || g2 < 0) throw std::invalid_argument("granularity overrides must be non-negative");
  if (branching < 2) throw std::invalid_argument("branching must be at least 2");
  if (postprocess_rounds < 1) throw std::invalid_argument("postprocess_rounds must be at least 1");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (format != "json" && format != "csv") throw std::invalid_argument("format must be json or csv");
  if (dataset.type != "synthetic" && dataset.type != "csv" && dataset.type != "text") {
    throw std::invalid_argument("dataset type must be synthetic, csv or text");
  }
  if (dataset.type != "synthetic" && dataset.path.empty()) throw std::invalid_argument("dataset path is required");
}

nlohmann::json ToJson(const ExperimentConfig& c) {
  nlohmann::json ds = {{"type", c.dataset.type}};
  if (c.dataset.type == "synthetic") {
    ds["distribution"] = ToString(c.dataset.distribution);
    ds["n"] = c.dataset.num_records;
    ds["d"] = c.dataset.num_attributes;
    ds["c"] = c.dataset.domain_size;
    ds["covariance"] = c.dataset.covariance;
  } else {
    ds["path"] = c.dataset.path;
    if (c.dataset.type == "csv") ds["c"] = c.dataset.domain_size;
  }
  return {{"dataset", ds},
          {"approaches", c.approaches},
          {"epsilons", c.epsilons},
          {"volume", c.volume},
          {"lambdas", c.lambdas},
          {"num_queries", c.num_queries},
          {"repeats", c.repeats},
          {"seed", c.seed},
          {"g1", c.g1},
          {"g2", c.g2},
          {"alg2_full_constraints", c.alg2_full_constraints},
          {"branching", c.branching},
          {"postprocess_rounds", c.postprocess_rounds},
          {"threads", c.threads},
          {"output", c.output},
          {"format", c.format}};
}

ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j) {
  static const std::vector<std::string> kKeys = {
      "dataset", "approaches", "epsilons", "epsilon", "volume", "lambdas", "num_queries", "repeats",
      "seed", "g1", "g2", "alg2_full_constraints", "branching", "postprocess_rounds", "threads",
      "output", "format"};
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  ExperimentConfig c;
  if (j.contains("dataset")) {
    const auto& ds = j.at("dataset");
    c.dataset.type = ds.value("type", c.dataset.type);
    if (ds.contains("distribution")) {
      c.dataset.distribution = ParseSyntheticDistribution(ds.at("distribution").get<std::string>());
    }
    c.dataset.num_records = ds.value("n", c.dataset.num_records);
    c.dataset.num_attributes = ds.value("d", c.dataset.num_attributes);
    c.dataset.domain_size = ds.value("c", c.dataset.domain_size);
    c.dataset.covariance = ds.value("covariance", c.dataset.covariance);
    c.dataset.path = ds.value("path", c.dataset.path);
  }
  c.approaches = j.value("approaches", c.approaches);
  if (j.contains("epsilon")) c.epsilons = {j.at("epsilon").get<double>()};
  c.epsilons = j.value("epsilons", c.epsilons);
  c.volume = j.value("volume", c.volume);
  c.lambdas = j.value("lambdas", c.lambdas);
  c.num_queries = j.value("num_queries", c.num_queries);
  c.repeats = j.value("repeats", c.repeats);
  c.seed = j.value("seed", c.seed);
  c.g1 = j.value("g1", c.g1);
  c.g2 = j.value("g2", c.g2);
  c.alg2_full_constraints = j.value("alg2_full_constraints", c.alg2_full_constraints);
  c.branching = j.value("branching", c.branching);
  c.postprocess_rounds = j.value("postprocess_rounds", c.postprocess_rounds);
  c.threads = j.value("threads", c.threads);
  c.output = j.value("output", c.output);
  c.format = j.value("format", c.format);
  c.Validate();
  return c;
}

Dataset LoadDataset(const DatasetConfig& config, uint64_t seed) {
  if (config.type == "synthetic") {
    return GenerateSynthetic({.distribution = config.distribution,
                              .num_records = config.num_records,
                              .num_attributes = config.num_attributes,
                              .domain_size = config.domain_size,
                              .covariance = config.covariance,
                              .seed = DeriveSeed(seed, {kDataStream})});
  }
  if (config.type == "csv") return IngestCsv(config.path, config.domain_size);
  if (config.type == "text") {
    std::ifstream in(config.path);
    if (!in) throw std::runtime_error("cannot open dataset '" + config.path + "'");
    return ReadDatasetText(in);
  }
  throw std::invalid_argument("unknown dataset type '" + config.type + "'");
}

std::unique_ptr<RangeApproach> MakeApproach(const std::string& name, const Dataset& dataset, double epsilon,
                                            uint64_t seed, const ExperimentConfig& config, int threads) {
  const std::string canonical = CanonicalApproachName(name);
  const LambdaOptions lambda{.full_constraints = config.alg2_full_constraints};
  if (canonical == "HDG" || canonical == "TDG") {
    GridApproachOptions opts{.mode = canonical == "HDG" ? GridMode::kHdg : GridMode::kTdg,
                             .g1 = config.g1,
                             .g2 = config.g2,
                             .postprocess_rounds = config.postprocess_rounds,
                             .lambda = lambda,
                             .threads = threads};
    return std::make_unique<GridApproach>(GridApproach::Build(dataset, epsilon, seed, opts));
  }
  if (canonical == "CALM") {
    return BuildCalm(dataset, epsilon, seed,
                     {.postprocess_rounds = config.postprocess_rounds, .lambda = lambda, .threads = threads});
  }
  if (canonical == "HIO") {
    return HioApproach::Build(dataset, epsilon, seed, {.branching = config.branching, .threads = threads});
  }
  if (canonical == "LHIO") {
    return LhioApproach::Build(dataset, epsilon, seed,
                               {.branching = config.branching,
                                .postprocess_rounds = config.postprocess_rounds,
                                .lambda = lambda,
                                .threads = threads});
  }
  if (canonical == "MSW") return MswApproach::Build(dataset, epsilon, seed, {.threads = threads});
  return std::make_unique<UniApproach>(dataset.num_attributes(), dataset.domain_size());
}

QueryWorkload RepeatWorkload(const ExperimentConfig& config, const Dataset& dataset, int repeat, int lambda) {
  const uint64_t seed_r = config.seed + static_cast<uint64_t>(repeat);
  return GenerateQueries(dataset.num_attributes(), dataset.domain_size(), lambda, config.volume, config.num_queries,
                         DeriveSeed(seed_r, {kWorkloadStream, static_cast<uint64_t>(lambda)}));
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  return RunExperiment(config, LoadDataset(config.dataset, config.seed));
}

ExperimentResult RunExperiment(const ExperimentConfig& config, const Dataset& dataset) {
  config.Validate();
  for (int l : config.lambdas) {
    if (l > dataset.num_attributes()) {
      throw std::invalid_argument("query dimension " + std::to_string(l) + " exceeds the attribute count");
    }
  }
  const size_t num_approaches = config.approaches.size();
  const size_t num_eps = config.epsilons.size();
  const size_t num_lambdas = config.lambdas.size();
  const size_t cells = num_approaches * num_eps * num_lambdas;

  // [repeat][cell] samples and timings.
  std::vector<std::vector<double>> mae(config.repeats, std::vector<double>(cells));
  std::vector<std::vector<double>> seconds(config.repeats, std::vector<double>(cells));
  std::vector<int64_t> reports(cells, 0);

  // With more workers than repeats the spare threads go to the approaches.
  const int outer = std::min(config.threads, config.repeats);
  const int inner = std::max(1, config.threads / outer);

  ParallelFor(0, config.repeats, outer, [&](int64_t r) {
    const uint64_t seed_r = config.seed + static_cast<uint64_t>(r);
    std::vector<QueryWorkload> workloads;
    std::vector<std::vector<double>> truths;
    for (int l : config.lambdas) {
      workloads.push_back(RepeatWorkload(config, dataset, static_cast<int>(r), l));
      std::vector<double> t;
      for (const auto& q : workloads.back().queries) t.push_back(TrueAnswer(dataset, q));
      truths.push_back(std::move(t));
    }
    for (size_t a = 0; a < num_approaches; ++a) {
      const std::string name = CanonicalApproachName(config.approaches[a]);
      for (size_t e = 0; e < num_eps; ++e) {
        const double eps = config.epsilons[e];
        const uint64_t seed =
            DeriveSeed(seed_r, {kApproachStream, ApproachCode(name), std::bit_cast<uint64_t>(eps)});
        try {
          const auto start = std::chrono::steady_clock::now();
          const auto approach = MakeApproach(name, dataset, eps, seed, config, inner);
          const double build = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

          // One full-budget report per user for every private approach, and no mechanism
          // may exceed its budget.
          if (name != "Uni" && approach->num_reports() != dataset.num_records()) {
            throw std::logic_error("collected " + std::to_string(approach->num_reports()) + " reports from " +
                                   std::to_string(dataset.num_records()) + " users");
          }
          if (approach->privacy_ratio() > std::exp(eps) * (1 + 1e-9)) {
            throw std::logic_error("mechanism likelihood ratio exceeds e^epsilon");
          }
          for (size_t l = 0; l < num_lambdas; ++l) {
            const size_t cell = (a * num_eps + e) * num_lambdas + l;
            const auto t0 = std::chrono::steady_clock::now();
            std::vector<double> est;
            for (const auto& q : workloads[l].queries) est.push_back(approach->Answer(q));
            mae[r][cell] = Mae(est, truths[l]);
            seconds[r][cell] =
                build + std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (r == 0) reports[cell] = approach->num_reports();
          }
        } catch (const std::exception& ex) {
          throw std::runtime_error(name + " (epsilon " + std::to_string(eps) + ", repeat " + std::to_string(r) +
                                   "): " + ex.what());
        }
      }
    }
  });

  ExperimentResult result{.num_records = dataset.num_records()};
  for (size_t a = 0; a < num_approaches; ++a) {
    for (size_t e = 0; e < num_eps; ++e) {
      for (size_t l = 0; l < num_lambdas; ++l) {
        const size_t cell = (a * num_eps + e) * num_lambdas + l;
        CellResult cr{.approach = CanonicalApproachName(config.approaches[a]),
                      .epsilon = config.epsilons[e],
                      .lambda = config.lambdas[l],
                      .reports = reports[cell]};
        double time = 0;
        for (int r = 0; r < config.repeats; ++r) {
          cr.mae_samples.push_back(mae[r][cell]);
          time += seconds[r][cell];
        }
        double sum = 0;
        for (double m : cr.mae_samples) sum += m;
        cr.mae_mean = sum / config.repeats;
        if (config.repeats > 1) {
          double ss = 0;
          for (double m : cr.mae_samples) ss += (m - cr.mae_mean) * (m - cr.mae_mean);
          cr.mae_sd = std::sqrt(ss / (config.repeats - 1));
        }
        cr.seconds = time / config.repeats;
        result.cells.push_back(std::move(cr));
      }
    }
  }
  return result;
}

nlohmann::json ToJson(const ExperimentResult& result) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : result.cells) {
    cells.push_back({{"approach", c.approach},
                     {"epsilon", c.epsilon},
                     {"lambda", c.lambda},
                     {"mae_mean", c.mae_mean},
                     {"mae_sd", c.mae_sd},
                     {"mae_samples", c.mae_samples},
                     {"seconds", c.seconds},
                     {"reports", c.reports}});
  }
  return {{"num_records", result.num_records}, {"cells", std::move(cells)}};
}

ExperimentResult ExperimentResultFromJson(const nlohmann::json& j) {
  ExperimentResult result{.num_records = j.at("num_records").get<int64_t>()};
  for (const auto& c : j.at("cells")) {
    result.cells.push_back({.approach = c.at("approach").get<std::string>(),
                            .epsilon = c.at("epsilon").get<double>(),
                            .lambda = c.at("lambda").get<int>(),
                            .mae_samples = c.at("mae_samples").get<std::vector<double>>(),
                            .mae_mean = c.at("mae_mean").get<double>(),
                            .mae_sd = c.at("mae_sd").get<double>(),
                            .seconds = c.at("seconds").get<double>(),
                            .reports = c.at("reports").get<int64_t>()});
  }
  return result;
}

void WriteCsv(const ExperimentResult& result, std::ostream& out) {
  out << "approach,epsilon,lambda,repeats,mae_mean,mae_sd,seconds,reports\n";
  out.precision(17);
  for (const auto& c : result.cells) {
    out << c.approach << ',' << c.epsilon << ',' << c.lambda << ',' << c.mae_samples.size() << ',' << c.mae_mean
        << ',' << c.mae_sd << ',' << c.seconds << ',' << c.reports << '\n';
  }
}

void Emit(const ExperimentResult& result, const std::string& format, const std::string& path) {
  if (format != "json" && format != "csv") throw std::invalid_argument("format must be json or csv");
  auto write = [&](std::ostream& out) {
    if (format == "csv") {
      WriteCsv(result, out);
    } else {
      out << ToJson(result).dump(2) << '\n';
    }
  };
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(out);
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace ldprange
