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

#include "ldprange/calm.h"

#include <stdexcept>

namespace ldprange {

std::unique_ptr<GridApproach> BuildCalm(const Dataset& dataset, double epsilon, uint64_t seed,
                                        const CalmOptions& options) {
  if (dataset.num_attributes() < 2) throw std::invalid_argument("CALM needs at least two attributes");
  GridApproachOptions grid{.mode = GridMode::kTdg,
                           .g2 = dataset.domain_size(),
                           .postprocess_rounds = options.postprocess_rounds,
                           .lambda = options.lambda,
                           .threads = options.threads,
                           .name = "CALM"};
  return std::make_unique<GridApproach>(GridApproach::Build(dataset, epsilon, seed, grid));
}

}  // namespace ldprange
