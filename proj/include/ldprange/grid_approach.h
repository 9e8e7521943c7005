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

// End-to-end TDG / HDG estimators: collect grids, post-process, build the
// response matrices (HDG only) and answer queries of any dimension.

#ifndef LDPRANGE_GRID_APPROACH_H_
#define LDPRANGE_GRID_APPROACH_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "ldprange/approach.h"
#include "ldprange/dataset.h"
#include "ldprange/grid.h"
#include "ldprange/range_estimation.h"
#include "ldprange/response_matrix.h"

namespace ldprange {

struct GridApproachOptions {
  GridMode mode = GridMode::kHdg;
  // Zero means "use the guideline value".
  int g1 = 0;
  int g2 = 0;
  double alpha1 = kDefaultAlpha1;
  double alpha2 = kDefaultAlpha2;
  int postprocess_rounds = 3;
  // Response-matrix stopping threshold; zero selects min(1e-7, 1/n).
  double matrix_tolerance = 0;
  int matrix_max_sweeps = 1000;
  LambdaOptions lambda;
  int threads = 1;
  // Display name; empty picks "TDG" or "HDG".
  std::string name;
};

class GridApproach : public RangeApproach {
 public:
  // Collects the grids from `dataset` and finishes them.
  static GridApproach Build(const Dataset& dataset, double epsilon, uint64_t seed,
                            const GridApproachOptions& options = {});
  // Finishes raw (un-post-processed) grids.
  static GridApproach FromRawGrids(GridSet raw, double epsilon, const GridApproachOptions& options = {});
  // Restores a finished estimator, e.g. from a cache.
  GridApproach(GridSet processed, std::vector<ResponseMatrix> matrices, double epsilon,
               GridApproachOptions options);

  std::string name() const override;
  double Answer(const RangeQuery& query) const override;
  int64_t num_reports() const override { return grids_.num_reports; }
  double epsilon() const { return epsilon_; }
  double privacy_ratio() const override;

  const GridSet& grids() const { return grids_; }
  // One per attribute pair in AttributePairs order; empty for TDG.
  const std::vector<ResponseMatrix>& matrices() const { return matrices_; }

  // 2-D answer for attributes (a, b) in either order.
  double AnswerPair(int a, const Interval& range_a, int b, const Interval& range_b) const;

 private:
  GridSet grids_;
  std::vector<ResponseMatrix> matrices_;
  double epsilon_ = 1.0;
  GridApproachOptions options_;
};

// Serialized finished estimator (grids plus matrices).
nlohmann::json ToJson(const GridApproach& approach);
GridApproach GridApproachFromJson(const nlohmann::json& j, const GridApproachOptions& options = {});

}  // namespace ldprange

#endif  // LDPRANGE_GRID_APPROACH_H_
