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

#include "ldprange/query.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ldprange/random.h"

namespace ldprange {

int OverlapLength(const Interval& a, const Interval& b) {
  return std::max(0, std::min(a.hi, b.hi) - std::max(a.lo, b.lo) + 1);
}

RangeQuery::RangeQuery(std::vector<Predicate> predicates) : predicates_(std::move(predicates)) {
  if (predicates_.empty()) throw std::invalid_argument("range query needs at least one predicate");
  for (size_t i = 0; i < predicates_.size(); ++i) {
    const auto& p = predicates_[i];
    if (p.attribute < 0) throw std::invalid_argument("negative attribute index");
    if (p.interval.lo < 1 || p.interval.lo > p.interval.hi) {
      throw std::invalid_argument("empty or invalid interval on attribute " +
                                  std::to_string(p.attribute));
    }
    for (size_t j = 0; j < i; ++j) {
      if (predicates_[j].attribute == p.attribute) {
        throw std::invalid_argument("attribute " + std::to_string(p.attribute) +
                                    " appears twice in a range query");
      }
    }
  }
}

void RangeQuery::Validate(int num_attributes, int domain_size) const {
  for (const auto& p : predicates_) {
    if (p.attribute >= num_attributes) {
      throw std::invalid_argument("unknown attribute " + std::to_string(p.attribute));
    }
    if (p.interval.hi > domain_size) {
      throw std::invalid_argument("interval exceeds domain on attribute " +
                                  std::to_string(p.attribute));
    }
  }
}

int IntervalLengthForVolume(double volume, int domain_size) {
  return static_cast<int>(std::floor(volume * domain_size + 0.5));
}

QueryWorkload GenerateQueries(int num_attributes, int domain_size, int dimension, double volume,
                              int count, uint64_t seed) {
  if (dimension < 1 || dimension > num_attributes) {
    throw std::invalid_argument("query dimension must lie in [1, d]");
  }
  const int length = IntervalLengthForVolume(volume, domain_size);
  if (length < 1 || length > domain_size) {
    throw std::invalid_argument("query volume gives an interval length outside [1, c]");
  }
  SplitMix64 rng(DeriveSeed(seed, {0x9e7, static_cast<uint64_t>(dimension)}));
  QueryWorkload workload{.queries = {}, .volume = volume, .seed = seed};
  workload.queries.reserve(count);
  std::vector<int> attrs(num_attributes);
  const uint64_t starts = static_cast<uint64_t>(domain_size - length + 1);
  for (int q = 0; q < count; ++q) {
    std::iota(attrs.begin(), attrs.end(), 0);
    std::vector<Predicate> preds;
    for (int i = 0; i < dimension; ++i) {
      const auto pick = i + static_cast<int>(UniformBelow(rng, num_attributes - i));
      std::swap(attrs[i], attrs[pick]);
      const int lo = 1 + static_cast<int>(UniformBelow(rng, starts));
      preds.push_back({attrs[i], {lo, lo + length - 1}});
    }
    workload.queries.emplace_back(std::move(preds));
  }
  return workload;
}

double TrueAnswer(const Dataset& dataset, const RangeQuery& query) {
  query.Validate(dataset.num_attributes(), dataset.domain_size());
  int64_t hits = 0;
  for (int64_t i = 0; i < dataset.num_records(); ++i) {
    bool inside = true;
    for (const auto& p : query.predicates()) {
      if (!p.interval.Contains(dataset.value(i, p.attribute))) {
        inside = false;
        break;
      }
    }
    hits += inside;
  }
  return static_cast<double>(hits) / static_cast<double>(dataset.num_records());
}

double UniformGuessAnswer(const RangeQuery& query, int domain_size) {
  double answer = 1.0;
  for (const auto& p : query.predicates()) {
    answer *= static_cast<double>(p.interval.length()) / domain_size;
  }
  return answer;
}

void WriteWorkloadText(const QueryWorkload& workload, std::ostream& out) {
  out << "# volume=" << workload.volume << " seed=" << workload.seed << '\n';
  for (const auto& q : workload.queries) {
    bool first = true;
    for (const auto& p : q.predicates()) {
      if (!first) out << ',';
      first = false;
      out << p.attribute << ',' << p.interval.lo << ',' << p.interval.hi;
    }
    out << '\n';
  }
}

RangeQuery ParseQueryText(const std::string& line) {
  std::vector<int> ints;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    size_t used = 0;
    int v;
    try {
      v = std::stoi(cell, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer in query: '" + cell + "'");
    }
    if (cell.find_first_not_of(" \t", used) != std::string::npos) {
      throw std::invalid_argument("bad integer in query: '" + cell + "'");
    }
    ints.push_back(v);
  }
  if (ints.empty() || ints.size() % 3 != 0) {
    throw std::invalid_argument("query must be attribute,lo,hi triples");
  }
  std::vector<Predicate> preds;
  for (size_t i = 0; i < ints.size(); i += 3) preds.push_back({ints[i], {ints[i + 1], ints[i + 2]}});
  return RangeQuery(std::move(preds));
}

QueryWorkload ReadWorkloadText(std::istream& in) {
  QueryWorkload workload;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream header(line.substr(1));
      std::string token;
      while (header >> token) {
        if (token.rfind("volume=", 0) == 0) workload.volume = std::stod(token.substr(7));
        if (token.rfind("seed=", 0) == 0) workload.seed = std::stoull(token.substr(5));
      }
      continue;
    }
    workload.queries.push_back(ParseQueryText(line));
  }
  return workload;
}

}  // namespace ldprange
