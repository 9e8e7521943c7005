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

#include "ldprange/msw.h"

#include <stdexcept>

#include "ldprange/grid.h"
#include "ldprange/parallel.h"
#include "ldprange/random.h"

namespace ldprange {

namespace {

constexpr uint64_t kMswStream = 0x5317;
constexpr uint64_t kMswAssign = 0x5318;

}  // namespace

std::unique_ptr<MswApproach> MswApproach::Build(const Dataset& dataset, double epsilon, uint64_t seed,
                                                const MswOptions& options) {
  const int d = dataset.num_attributes();
  const int c = dataset.domain_size();
  const auto params = SwParams::Create(epsilon);
  const auto members = AssignGroups(dataset.num_records(), d, DeriveSeed(seed, {kMswAssign})).Members();
  std::vector<std::vector<double>> marginals(d);
  ParallelFor(0, d, options.threads, [&](int64_t a) {
    std::vector<double> reports;
    reports.reserve(members[a].size());
    for (int64_t user : members[a]) {
      SplitMix64 rng(DeriveSeed(seed, {kMswStream, static_cast<uint64_t>(a), static_cast<uint64_t>(user)}));
      reports.push_back(SwPerturb(BucketCenter(dataset.value(user, static_cast<int>(a)), c), params, rng));
    }
    marginals[a] = SwEmReconstruct(reports, params, c, options.em);
  });
  return std::make_unique<MswApproach>(std::move(marginals), epsilon, dataset.num_records());
}

MswApproach::MswApproach(std::vector<std::vector<double>> marginals, double epsilon, int64_t num_reports)
    : marginals_(std::move(marginals)), epsilon_(epsilon), num_reports_(num_reports) {
  if (marginals_.empty()) throw std::invalid_argument("MSW needs at least one attribute");
  for (const auto& m : marginals_) {
    if (m.size() != marginals_.front().size()) throw std::invalid_argument("MSW marginals differ in size");
  }
}

double MswApproach::privacy_ratio() const { return SwParams::Create(epsilon_).PrivacyRatio(); }

double MswApproach::Answer(const RangeQuery& query) const {
  query.Validate(static_cast<int>(marginals_.size()), static_cast<int>(marginals_.front().size()));
  double answer = 1;
  for (const auto& p : query.predicates()) {
    double mass = 0;
    for (int v = p.interval.lo; v <= p.interval.hi; ++v) mass += marginals_[p.attribute][v - 1];
    answer *= mass;
  }
  return answer;
}

double UniApproach::Answer(const RangeQuery& query) const {
  query.Validate(num_attributes_, domain_size_);
  return UniformGuessAnswer(query, domain_size_);
}

}  // namespace ldprange
