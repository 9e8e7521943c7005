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

#ifndef LDPRANGE_QUERY_H_
#define LDPRANGE_QUERY_H_

#include <cstdint>
#include <iosfwd>
#include <initializer_list>
#include <string>
#include <vector>

#include "ldprange/dataset.h"

namespace ldprange {

// Closed interval [lo, hi] of 1-based domain values.
struct Interval {
  int lo = 1;
  int hi = 1;

  int length() const { return hi - lo + 1; }
  bool Contains(int v) const { return v >= lo && v <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Length of the intersection of two intervals (0 if disjoint).
int OverlapLength(const Interval& a, const Interval& b);

struct Predicate {
  int attribute = 0;
  Interval interval;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

// Conjunction of range predicates on distinct attributes.
class RangeQuery {
 public:
  RangeQuery() = default;
  // Throws std::invalid_argument on an empty predicate list, repeated
  // attributes or an empty interval (lo > hi or lo < 1).
  explicit RangeQuery(std::vector<Predicate> predicates);
  explicit RangeQuery(std::initializer_list<Predicate> predicates)
      : RangeQuery(std::vector<Predicate>(predicates)) {}

  int dimension() const { return static_cast<int>(predicates_.size()); }
  const std::vector<Predicate>& predicates() const { return predicates_; }

  // Throws unless every attribute is below num_attributes and every interval
  // fits inside [1, domain_size].
  void Validate(int num_attributes, int domain_size) const;

  friend bool operator==(const RangeQuery&, const RangeQuery&) = default;

 private:
  std::vector<Predicate> predicates_;
};

struct QueryWorkload {
  std::vector<RangeQuery> queries;
  double volume = 0.5;
  uint64_t seed = 0;
};

// round(volume * c), rounding halves upward.
int IntervalLengthForVolume(double volume, int domain_size);

// Draws `count` queries: each picks `dimension` distinct attributes uniformly
// (Fisher-Yates prefix) and, per attribute, a start uniform in [1, c - L + 1]
// with L = IntervalLengthForVolume(volume, c).
QueryWorkload GenerateQueries(int num_attributes, int domain_size, int dimension, double volume,
                              int count, uint64_t seed);

// Fraction of records satisfying every predicate.
double TrueAnswer(const Dataset& dataset, const RangeQuery& query);

// Uniform-distribution guess: product of interval fractions.
double UniformGuessAnswer(const RangeQuery& query, int domain_size);

// One query per line as comma-separated integers: attribute,lo,hi,attribute,lo,hi,...
void WriteWorkloadText(const QueryWorkload& workload, std::ostream& out);
QueryWorkload ReadWorkloadText(std::istream& in);
RangeQuery ParseQueryText(const std::string& line);

}  // namespace ldprange

#endif  // LDPRANGE_QUERY_H_
