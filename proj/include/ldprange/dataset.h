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

#ifndef LDPRANGE_DATASET_H_
#define LDPRANGE_DATASET_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ldprange {

bool IsPowerOfTwo(int64_t x);
int64_t NextPowerOfTwo(int64_t x);

// Ordinal attribute domain {1, ..., size}. The size is always a power of two.
class OrdinalDomain {
 public:
  explicit OrdinalDomain(int size);

  int size() const { return size_; }
  bool Contains(int v) const { return v >= 1 && v <= size_; }

  friend bool operator==(const OrdinalDomain&, const OrdinalDomain&) = default;

 private:
  int size_;
};

// n records of d attributes, stored row-major. Values are 1-based; attribute
// indices are 0-based throughout the library.
class Dataset {
 public:
  Dataset(int num_attributes, OrdinalDomain domain, std::vector<int> values);

  int64_t num_records() const { return num_records_; }
  int num_attributes() const { return num_attributes_; }
  const OrdinalDomain& domain() const { return domain_; }
  int domain_size() const { return domain_.size(); }

  std::span<const int> record(int64_t i) const {
    return {values_.data() + i * num_attributes_, static_cast<size_t>(num_attributes_)};
  }
  int value(int64_t i, int attribute) const { return values_[i * num_attributes_ + attribute]; }

  const std::vector<int>& values() const { return values_; }

 private:
  int num_attributes_;
  OrdinalDomain domain_;
  int64_t num_records_;
  std::vector<int> values_;
};

enum class SyntheticDistribution { kNormal, kLaplace };

SyntheticDistribution ParseSyntheticDistribution(const std::string& name);
std::string ToString(SyntheticDistribution dist);

struct SyntheticSpec {
  SyntheticDistribution distribution = SyntheticDistribution::kNormal;
  int64_t num_records = 0;
  int num_attributes = 0;
  int domain_size = 0;
  // Pairwise covariance (equal to the correlation, unit variances).
  double covariance = 0.0;
  uint64_t seed = 0;
};

// Samples zero-mean, unit-variance attributes with equal pairwise covariance,
// clips each to [-4, 4] and bins it into domain_size equal-width buckets.
// Throws std::invalid_argument on bad sizes or a covariance outside [0, 1]
// (the only equicorrelation values that are positive semi-definite for every d).
Dataset GenerateSynthetic(const SyntheticSpec& spec);

// Reads an RFC-4180 CSV with a header row. Each column is min-max scaled and
// equal-width binned into [1, c'], where c' is domain_size rounded up to a
// power of two. Constant columns map to 1. Throws std::runtime_error naming
// the row and column of the first non-numeric cell.
Dataset IngestCsv(const std::string& path, int domain_size);
Dataset IngestCsv(std::istream& in, int domain_size);

// Line-oriented text form: a "# d=<d> c=<c>" header, then one record per line
// as comma-separated integers.
void WriteDatasetText(const Dataset& dataset, std::ostream& out);
Dataset ReadDatasetText(std::istream& in);

}  // namespace ldprange

#endif  // LDPRANGE_DATASET_H_
