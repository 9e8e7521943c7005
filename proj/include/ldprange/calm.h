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

// Full-resolution 2-D marginals, one per attribute pair. This is the TDG
// pipeline with a c x c grid, so the same code answers it.

#ifndef LDPRANGE_CALM_H_
#define LDPRANGE_CALM_H_

#include <memory>

#include "ldprange/grid_approach.h"

namespace ldprange {

struct CalmOptions {
  int postprocess_rounds = 3;
  LambdaOptions lambda;
  int threads = 1;
};

std::unique_ptr<GridApproach> BuildCalm(const Dataset& dataset, double epsilon, uint64_t seed,
                                        const CalmOptions& options = {});

}  // namespace ldprange

#endif  // LDPRANGE_CALM_H_
