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

#ifndef LDPRANGE_GRID_INL_H_
#define LDPRANGE_GRID_INL_H_

#include <stdexcept>

#include "ldprange/frequency_oracle.h"
#include "ldprange/random.h"

namespace ldprange {

template <typename CellFn>
std::vector<double> CollectCells(const std::vector<int64_t>& users, int num_cells, double epsilon,
                                 uint64_t stream_seed, CellFn&& cell_of_user, int threads) {
  if (users.empty()) throw std::invalid_argument("cannot collect a grid from an empty user group");
  const auto params = OlhParams::Create(num_cells, epsilon);
  std::vector<OlhReport> reports;
  reports.reserve(users.size());
  for (int64_t user : users) {
    // Hash seed is the stream seed xor the user id; the perturbation coins
    // come from an independent per-user substream.
    const uint64_t hash_seed = stream_seed ^ static_cast<uint64_t>(user);
    SplitMix64 rng(Mix64(hash_seed));
    reports.push_back(OlhPerturb(cell_of_user(user), params, hash_seed, rng));
  }
  return OlhAggregate(reports, params, threads);
}

}  // namespace ldprange

#endif  // LDPRANGE_GRID_INL_H_
