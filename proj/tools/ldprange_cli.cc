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

// Command-line front end: synth, run, answer, report.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ldprange/dataset.h"
#include "ldprange/experiment.h"
#include "ldprange/grid_approach.h"
#include "ldprange/query.h"

namespace {

using namespace ldprange;

// Writes through `fn` to `path`, or stdout when empty.
template <typename Fn>
void WriteTo(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  fn(out);
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

Dataset ReadDatasetFile(const std::string& path, int csv_domain) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return IngestCsv(path, csv_domain);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");
  return ReadDatasetText(in);
}

struct SynthArgs {
  std::string distribution = "normal";
  int64_t n = 100000;
  int d = 3;
  int c = 64;
  double covariance = 0.8;
  uint64_t seed = 1;
  std::string out;
  std::string workload_out;
  int lambda = 2;
  double volume = 0.5;
  int num_queries = 200;
};

void RunSynth(const SynthArgs& a) {
  const Dataset data = GenerateSynthetic({.distribution = ParseSyntheticDistribution(a.distribution),
                                          .num_records = a.n,
                                          .num_attributes = a.d,
                                          .domain_size = a.c,
                                          .covariance = a.covariance,
                                          .seed = a.seed});
  WriteTo(a.out, [&](std::ostream& os) { WriteDatasetText(data, os); });
  if (!a.workload_out.empty()) {
    const auto workload = GenerateQueries(a.d, a.c, a.lambda, a.volume, a.num_queries, a.seed + 1);
    WriteTo(a.workload_out, [&](std::ostream& os) { WriteWorkloadText(workload, os); });
  }
}

struct RunArgs {
  std::string config;
  std::string out;
  std::string format;
  int threads = 0;
  std::optional<uint64_t> seed;
  int repeats = 0;
};

void RunRun(const RunArgs& a) {
  ExperimentConfig config = ExperimentConfigFromJson(ReadJsonFile(a.config));
  if (a.threads > 0) config.threads = a.threads;
  if (!a.out.empty()) config.output = a.out;
  if (!a.format.empty()) config.format = a.format;
  if (a.seed) config.seed = *a.seed;
  if (a.repeats > 0) config.repeats = a.repeats;
  config.Validate();
  Emit(RunExperiment(config), config.format, config.output);
}

struct AnswerArgs {
  std::string grids;
  std::string data;
  int csv_domain = 64;
  std::string mode = "hdg";
  double epsilon = 1.0;
  uint64_t seed = 1;
  int g1 = 0;
  int g2 = 0;
  bool full_constraints = false;
  std::string save_grids;
  std::vector<std::string> queries;
  std::string workload;
  bool truth = false;
  int threads = 1;
  std::string out;
};

void RunAnswer(const AnswerArgs& a) {
  GridApproachOptions opts{.mode = ParseGridMode(a.mode),
                           .g1 = a.g1,
                           .g2 = a.g2,
                           .lambda = {.full_constraints = a.full_constraints},
                           .threads = a.threads};
  std::optional<Dataset> data;
  if (!a.data.empty()) data = ReadDatasetFile(a.data, a.csv_domain);
  if (a.grids.empty() && !data) throw std::invalid_argument("answer needs --grids or --data");
  if (a.truth && !data) throw std::invalid_argument("--truth needs --data");

  const GridApproach approach = a.grids.empty() ? GridApproach::Build(*data, a.epsilon, a.seed, opts)
                                                : GridApproachFromJson(ReadJsonFile(a.grids), opts);
  if (!a.save_grids.empty()) {
    WriteTo(a.save_grids, [&](std::ostream& os) { os << ToJson(approach).dump() << '\n'; });
  }

  std::vector<RangeQuery> queries;
  for (const auto& q : a.queries) queries.push_back(ParseQueryText(q));
  if (!a.workload.empty()) {
    std::ifstream in(a.workload);
    if (!in) throw std::runtime_error("cannot open workload '" + a.workload + "'");
    for (auto& q : ReadWorkloadText(in).queries) queries.push_back(std::move(q));
  }
  if (queries.empty()) {
    if (a.save_grids.empty()) throw std::invalid_argument("no queries given (use --query or --workload)");
    return;
  }

  WriteTo(a.out, [&](std::ostream& os) {
    os << std::setprecision(10) << (a.truth ? "estimate,truth\n" : "estimate\n");
    for (const auto& q : queries) {
      os << approach.Answer(q);
      if (a.truth) os << ',' << TrueAnswer(*data, q);
      os << '\n';
    }
  });
}

struct ReportArgs {
  std::string in;
  std::string format = "table";
  std::string out;
};

void RunReport(const ReportArgs& a) {
  const ExperimentResult result = ExperimentResultFromJson(ReadJsonFile(a.in));
  if (a.format == "csv" || a.format == "json") {
    Emit(result, a.format, a.out);
    return;
  }
  if (a.format != "table") throw std::invalid_argument("report format must be table, csv or json");
  WriteTo(a.out, [&](std::ostream& os) {
    os << std::left << std::setw(8) << "approach" << std::right << std::setw(9) << "epsilon" << std::setw(8)
       << "lambda" << std::setw(14) << "MAE" << std::setw(14) << "sd" << std::setw(11) << "seconds" << '\n';
    for (const auto& c : result.cells) {
      os << std::left << std::setw(8) << c.approach << std::right << std::setw(9) << std::fixed
         << std::setprecision(2) << c.epsilon << std::setw(8) << c.lambda << std::setw(14) << std::scientific
         << std::setprecision(4) << c.mae_mean << std::setw(14) << c.mae_sd << std::setw(11) << std::fixed
         << std::setprecision(3) << c.seconds << '\n';
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-dimensional range queries under local differential privacy"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate a synthetic dataset (and optionally a query workload)");
  s->add_option("--distribution", synth.distribution, "normal or laplace")->capture_default_str();
  s->add_option("-n,--records", synth.n, "Number of records")->capture_default_str();
  s->add_option("-d,--attributes", synth.d, "Number of attributes")->capture_default_str();
  s->add_option("-c,--domain", synth.c, "Domain size (power of two)")->capture_default_str();
  s->add_option("--covariance", synth.covariance, "Pairwise covariance in [0, 1]")->capture_default_str();
  s->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  s->add_option("-o,--out", synth.out, "Dataset path (stdout if omitted)");
  s->add_option("--workload-out", synth.workload_out, "Also write a query workload here");
  s->add_option("--lambda", synth.lambda, "Query dimension for the workload")->capture_default_str();
  s->add_option("--volume", synth.volume, "Per-attribute query volume")->capture_default_str();
  s->add_option("--num-queries", synth.num_queries, "Workload size")->capture_default_str();
  s->add_option("--threads", [](const CLI::results_t&) { return true; }, "Accepted for uniformity; unused");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Run an experiment described by a JSON config");
  r->add_option("config", run.config, "Config file")->required()->check(CLI::ExistingFile);
  r->add_option("-o,--out", run.out, "Result path (stdout if omitted)");
  r->add_option("--format", run.format, "json or csv");
  r->add_option("--threads", run.threads, "Worker threads")->check(CLI::PositiveNumber);
  r->add_option("--seed", run.seed, "Override the config seed");
  r->add_option("--repeats", run.repeats, "Override the repeat count")->check(CLI::PositiveNumber);

  AnswerArgs ans;
  auto* q = app.add_subcommand("answer", "Answer range queries with TDG/HDG grids");
  q->add_option("--grids", ans.grids, "Cached grids (JSON from --save-grids)");
  q->add_option("--data", ans.data, "Dataset (text, or .csv) to collect from");
  q->add_option("--csv-domain", ans.csv_domain, "Domain size for CSV ingestion")->capture_default_str();
  q->add_option("--mode", ans.mode, "hdg or tdg")->capture_default_str();
  q->add_option("--epsilon", ans.epsilon, "Privacy budget")->capture_default_str();
  q->add_option("--seed", ans.seed, "Random seed")->capture_default_str();
  q->add_option("--g1", ans.g1, "1-D granularity override");
  q->add_option("--g2", ans.g2, "2-D granularity override");
  q->add_flag("--full-constraints", ans.full_constraints, "Use interval/complement constraints for lambda > 2");
  q->add_option("--save-grids", ans.save_grids, "Write the finished grids here");
  q->add_option("-q,--query", ans.queries, "Query as attr,lo,hi[,attr,lo,hi...] (0-based attributes)");
  q->add_option("--workload", ans.workload, "Workload file, one query per line");
  q->add_flag("--truth", ans.truth, "Also print the true answer (needs --data)");
  q->add_option("--threads", ans.threads, "Worker threads")->check(CLI::PositiveNumber);
  q->add_option("-o,--out", ans.out, "Output path (stdout if omitted)");
  q->footer(
      "Queries: comma-separated attr,lo,hi triples, e.g. -q 0,1,8,2,5,16 means attribute 0 in [1,8] and attribute 2 in [5,16].\n"
      "Workload files hold one query per line in the same form; lines starting with # are headers.");

  ReportArgs rep;
  auto* p = app.add_subcommand("report", "Summarize a JSON result file");
  p->add_option("results", rep.in, "Result JSON from run")->required()->check(CLI::ExistingFile);
  p->add_option("--format", rep.format, "table, csv or json")->capture_default_str();
  p->add_option("-o,--out", rep.out, "Output path (stdout if omitted)");
  p->add_option("--threads", [](const CLI::results_t&) { return true; }, "Accepted for uniformity; unused");

  try {
    app.parse(argc, argv);
    if (*s) RunSynth(synth);
    if (*r) RunRun(run);
    if (*q) RunAnswer(ans);
    if (*p) RunReport(rep);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
