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

#include "ldprange/grid_approach.h"

#include <stdexcept>
#include <string>
#include <utility>

#include "ldprange/frequency_oracle.h"
#include "ldprange/parallel.h"
#include "ldprange/postprocess.h"

namespace ldprange {

GridApproach GridApproach::Build(const Dataset& dataset, double epsilon, uint64_t seed,
                                 const GridApproachOptions& options) {
  GranularityPlan plan =
      ChooseGranularities(dataset.num_records(), dataset.num_attributes(), epsilon,
                          dataset.domain_size(), options.mode, options.alpha1, options.alpha2);
  if (options.g1 > 0) plan.g1 = options.g1;
  if (options.g2 > 0) plan.g2 = options.g2;
  GridSet raw = BuildGrids(dataset, plan, epsilon, seed, {.threads = options.threads});
  return FromRawGrids(std::move(raw), epsilon, options);
}

GridApproach GridApproach::FromRawGrids(GridSet raw, double epsilon, const GridApproachOptions& options) {
  FullPostprocess(raw, options.postprocess_rounds);
  std::vector<ResponseMatrix> matrices;
  if (raw.mode == GridMode::kHdg) {
    const WeightedUpdateOptions wu{
        .tolerance = options.matrix_tolerance > 0 ? options.matrix_tolerance
                                                  : DefaultTolerance(raw.num_reports),
        .max_sweeps = options.matrix_max_sweeps};
    matrices.resize(raw.grids_2d.size());
    ParallelFor(0, static_cast<int64_t>(raw.grids_2d.size()), options.threads, [&](int64_t i) {
      const Grid2D& g = raw.grids_2d[i];
      matrices[i] = BuildResponseMatrix(raw.Single(g.first), raw.Single(g.second), g, wu);
    });
  }
  return GridApproach(std::move(raw), std::move(matrices), epsilon, options);
}

GridApproach::GridApproach(GridSet processed, std::vector<ResponseMatrix> matrices, double epsilon,
                           GridApproachOptions options)
    : grids_(std::move(processed)),
      matrices_(std::move(matrices)),
      epsilon_(epsilon),
      options_(std::move(options)) {
  options_.mode = grids_.mode;
  if (grids_.mode == GridMode::kHdg && matrices_.size() != grids_.grids_2d.size()) {
    throw std::invalid_argument("HDG needs one response matrix per attribute pair");
  }
}

std::string GridApproach::name() const {
  return options_.name.empty() ? ToString(grids_.mode) : options_.name;
}

double GridApproach::privacy_ratio() const {
  // Every group reports one OLH value; the ratio only depends on epsilon.
  return OlhParams::Create(2, epsilon_).PrivacyRatio();
}

double GridApproach::AnswerPair(int a, const Interval& range_a, int b, const Interval& range_b) const {
  if (a == b) throw std::invalid_argument("pair query needs two distinct attributes");
  if (a > b) return AnswerPair(b, range_b, a, range_a);
  const int idx = PairIndex(a, b, grids_.num_attributes);
  const ResponseMatrix* m = matrices_.empty() ? nullptr : &matrices_[idx];
  return Answer2D(grids_.grids_2d[idx], range_a, range_b, m);
}

double GridApproach::Answer(const RangeQuery& query) const {
  query.Validate(grids_.num_attributes, grids_.domain_size);
  const auto& preds = query.predicates();
  const Interval full{1, grids_.domain_size};
  switch (query.dimension()) {
    case 1: {
      const int a = preds[0].attribute;
      if (grids_.mode == GridMode::kHdg) return Answer1D(grids_.Single(a), preds[0].interval);
      // Lowest-index pair holding the attribute, partner at full domain.
      const int partner = a == 0 ? 1 : 0;
      return AnswerPair(a, preds[0].interval, partner, full);
    }
    case 2:
      return AnswerPair(preds[0].attribute, preds[0].interval, preds[1].attribute, preds[1].interval);
    default:
      return EstimateFromPairs(
          query, grids_.domain_size,
          [this](int a, const Interval& ra, int b, const Interval& rb) { return AnswerPair(a, ra, b, rb); },
          options_.lambda);
  }
}

nlohmann::json ToJson(const GridApproach& approach) {
  nlohmann::json matrices = nlohmann::json::array();
  for (const auto& m : approach.matrices()) matrices.push_back(ToJson(m));
  return {{"name", approach.name()},
          {"epsilon", approach.epsilon()},
          {"grids", ToJson(approach.grids())},
          {"matrices", std::move(matrices)}};
}

GridApproach GridApproachFromJson(const nlohmann::json& j, const GridApproachOptions& options) {
  std::vector<ResponseMatrix> matrices;
  for (const auto& m : j.at("matrices")) matrices.push_back(ResponseMatrixFromJson(m));
  GridApproachOptions opts = options;
  if (opts.name.empty()) opts.name = j.value("name", "");
  return GridApproach(GridSetFromJson(j.at("grids")), std::move(matrices), j.at("epsilon").get<double>(),
                      std::move(opts));
}

}  // namespace ldprange
