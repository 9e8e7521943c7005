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

// Experiment configuration, the repeat loop and result serialization.

#ifndef LDPRANGE_EXPERIMENT_H_
#define LDPRANGE_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "ldprange/approach.h"
#include "ldprange/dataset.h"
#include "ldprange/query.h"

namespace ldprange {

// Mean absolute difference. Throws std::invalid_argument on empty input or
// a length mismatch.
double Mae(const std::vector<double>& estimates, const std::vector<double>& truths);

struct DatasetConfig {
  // "synthetic", "csv" or "text".
  std::string type = "synthetic";
  SyntheticDistribution distribution = SyntheticDistribution::kNormal;
  int64_t num_records = 100000;
  int num_attributes = 3;
  int domain_size = 64;
  double covariance = 0.8;
  std::string path;  // csv / text
};

struct ExperimentConfig {
  DatasetConfig dataset;
  std::vector<std::string> approaches = {"HDG", "TDG", "MSW", "HIO", "Uni"};
  std::vector<double> epsilons = {1.0};
  double volume = 0.5;
  std::vector<int> lambdas = {2};
  int num_queries = 200;
  int repeats = 10;
  uint64_t seed = 1;
  // Grid overrides; 0 keeps the guideline.
  int g1 = 0;
  int g2 = 0;
  bool alg2_full_constraints = false;
  int branching = 4;
  int postprocess_rounds = 3;
  int threads = 1;
  std::string output;
  std::string format = "json";

  // Throws std::invalid_argument describing the first bad field.
  void Validate() const;
};

nlohmann::json ToJson(const ExperimentConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j);

// Canonical approach name ("HDG", "TDG", "CALM", "HIO", "LHIO", "MSW", "Uni");
// matching is case-insensitive. Throws on an unknown name.
std::string CanonicalApproachName(const std::string& name);

Dataset LoadDataset(const DatasetConfig& config, uint64_t seed);

// Builds one approach with the config's knobs.
std::unique_ptr<RangeApproach> MakeApproach(const std::string& name, const Dataset& dataset, double epsilon,
                                            uint64_t seed, const ExperimentConfig& config, int threads = 1);

// Workload of repeat r for query dimension lambda, shared by every approach in
// that repeat.
QueryWorkload RepeatWorkload(const ExperimentConfig& config, const Dataset& dataset, int repeat, int lambda);

struct CellResult {
  std::string approach;
  double epsilon = 0;
  int lambda = 0;
  std::vector<double> mae_samples;  // one per repeat, in repeat order
  double mae_mean = 0;
  double mae_sd = 0;  // sample standard deviation; 0 with one repeat
  double seconds = 0;  // mean wall-clock build + answer time per repeat
  int64_t reports = 0;  // perturbed reports per repeat
};

struct ExperimentResult {
  int64_t num_records = 0;
  std::vector<CellResult> cells;  // approach-major, then epsilon, then lambda
};

// For each repeat r the seed is seed + r: the workload for every lambda is
// drawn from it and each approach is rebuilt from fresh reports on its own
// substream. Repeats run in parallel; results do not depend on the thread
// count (apart from timings). Errors are rethrown with approach and repeat.
ExperimentResult RunExperiment(const ExperimentConfig& config);
ExperimentResult RunExperiment(const ExperimentConfig& config, const Dataset& dataset);

nlohmann::json ToJson(const ExperimentResult& result);
ExperimentResult ExperimentResultFromJson(const nlohmann::json& j);

// Header: approach,epsilon,lambda,repeats,mae_mean,mae_sd,seconds,reports
void WriteCsv(const ExperimentResult& result, std::ostream& out);
// Writes JSON or CSV to `path`, or stdout when empty. Throws on IO failure.
void Emit(const ExperimentResult& result, const std::string& format, const std::string& path);

}  // namespace ldprange

#endif  // LDPRANGE_EXPERIMENT_H_
