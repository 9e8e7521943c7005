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

#include "ldprange/dataset.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ldprange/random.h"

namespace ldprange {

namespace {

constexpr double kClip = 4.0;

int BinUnitInterval(double u, int buckets) {
  int b = static_cast<int>(std::floor(u * buckets)) + 1;
  return std::clamp(b, 1, buckets);
}

// Splits one CSV record, honoring quotes ("" inside quotes is a literal quote).
// Returns false at end of input.
bool ReadCsvRecord(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool in_quotes = false;
  bool any = false;
  char ch;
  while (in.get(ch)) {
    any = true;
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\r') {
      if (in.peek() == '\n') in.get(ch);
      break;
    } else if (ch == '\n') {
      break;
    } else {
      field.push_back(ch);
    }
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

bool ParseDouble(std::string_view text, double& out) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

bool IsBlank(const std::vector<std::string>& fields) {
  return fields.size() == 1 && fields[0].find_first_not_of(" \t") == std::string::npos;
}

}  // namespace

bool IsPowerOfTwo(int64_t x) { return x > 0 && (x & (x - 1)) == 0; }

int64_t NextPowerOfTwo(int64_t x) {
  int64_t p = 1;
  while (p < x) p <<= 1;
  return p;
}

OrdinalDomain::OrdinalDomain(int size) : size_(size) {
  if (size < 2 || !IsPowerOfTwo(size)) {
    throw std::invalid_argument("domain size must be a power of two >= 2, got " +
                                std::to_string(size));
  }
}

Dataset::Dataset(int num_attributes, OrdinalDomain domain, std::vector<int> values)
    : num_attributes_(num_attributes), domain_(domain), values_(std::move(values)) {
  if (num_attributes_ < 1) throw std::invalid_argument("dataset needs at least one attribute");
  if (values_.empty() || values_.size() % num_attributes_ != 0) {
    throw std::invalid_argument("dataset values must hold a positive whole number of records");
  }
  num_records_ = static_cast<int64_t>(values_.size()) / num_attributes_;
  for (size_t i = 0; i < values_.size(); ++i) {
    if (!domain_.Contains(values_[i])) {
      throw std::invalid_argument("record " + std::to_string(i / num_attributes_) +
                                  " has value " + std::to_string(values_[i]) +
                                  " outside [1, " + std::to_string(domain_.size()) + "]");
    }
  }
}

SyntheticDistribution ParseSyntheticDistribution(const std::string& name) {
  if (name == "normal") return SyntheticDistribution::kNormal;
  if (name == "laplace") return SyntheticDistribution::kLaplace;
  throw std::invalid_argument("unknown synthetic distribution: " + name);
}

std::string ToString(SyntheticDistribution dist) {
  return dist == SyntheticDistribution::kNormal ? "normal" : "laplace";
}

Dataset GenerateSynthetic(const SyntheticSpec& spec) {
  if (spec.num_records < 1) throw std::invalid_argument("synthetic dataset needs n >= 1");
  if (spec.num_attributes < 2) throw std::invalid_argument("synthetic dataset needs d >= 2");
  if (!(spec.covariance >= 0.0 && spec.covariance <= 1.0)) {
    throw std::invalid_argument("covariance matrix is not positive semi-definite: pairwise "
                                "covariance must lie in [0, 1]");
  }
  OrdinalDomain domain(spec.domain_size);
  const int d = spec.num_attributes;
  const int c = domain.size();

  // Equicorrelated Gaussian via one shared factor: X_t = sqrt(rho) Z_0 + sqrt(1 - rho) Z_t.
  // A symmetric multivariate Laplace is the same vector scaled by sqrt(W), W ~ Exp(1).
  const double shared = std::sqrt(spec.covariance);
  const double own = std::sqrt(1.0 - spec.covariance);
  SplitMix64 rng(DeriveSeed(spec.seed, {0x5e7d}));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::exponential_distribution<double> exponential(1.0);

  std::vector<int> values(static_cast<size_t>(spec.num_records) * d);
  std::vector<double> row(d);
  for (int64_t i = 0; i < spec.num_records; ++i) {
    const double z0 = normal(rng);
    for (int t = 0; t < d; ++t) row[t] = shared * z0 + own * normal(rng);
    if (spec.distribution == SyntheticDistribution::kLaplace) {
      const double scale = std::sqrt(exponential(rng));
      for (double& x : row) x *= scale;
    }
    for (int t = 0; t < d; ++t) {
      const double clipped = std::clamp(row[t], -kClip, kClip);
      values[i * d + t] = BinUnitInterval((clipped + kClip) / (2 * kClip), c);
    }
  }
  return Dataset(d, domain, std::move(values));
}

Dataset IngestCsv(const std::string& path, int domain_size) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open CSV file: " + path);
  return IngestCsv(in, domain_size);
}

Dataset IngestCsv(std::istream& in, int domain_size) {
  if (domain_size < 1) throw std::invalid_argument("domain size must be positive");
  const int c = static_cast<int>(NextPowerOfTwo(std::max(domain_size, 2)));

  std::vector<std::string> fields;
  if (!ReadCsvRecord(in, fields) || IsBlank(fields)) throw std::runtime_error("CSV file is empty");
  const size_t d = fields.size();

  std::vector<std::vector<double>> columns(d);
  int64_t row = 1;  // header is row 1
  while (ReadCsvRecord(in, fields)) {
    ++row;
    if (IsBlank(fields)) continue;
    if (fields.size() != d) {
      throw std::runtime_error("CSV row " + std::to_string(row) + " has " +
                               std::to_string(fields.size()) + " cells, expected " +
                               std::to_string(d));
    }
    for (size_t col = 0; col < d; ++col) {
      double x;
      if (!ParseDouble(fields[col], x)) {
        throw std::runtime_error("non-numeric cell at row " + std::to_string(row) + ", column " +
                                 std::to_string(col + 1) + ": '" + fields[col] + "'");
      }
      columns[col].push_back(x);
    }
  }
  if (columns[0].empty()) throw std::runtime_error("CSV file has a header but no data rows");

  const size_t n = columns[0].size();
  std::vector<int> values(n * d);
  for (size_t col = 0; col < d; ++col) {
    const auto [lo, hi] = std::minmax_element(columns[col].begin(), columns[col].end());
    const double min = *lo, range = *hi - *lo;
    for (size_t i = 0; i < n; ++i) {
      values[i * d + col] = range > 0 ? BinUnitInterval((columns[col][i] - min) / range, c) : 1;
    }
  }
  return Dataset(static_cast<int>(d), OrdinalDomain(c), std::move(values));
}

void WriteDatasetText(const Dataset& dataset, std::ostream& out) {
  out << "# d=" << dataset.num_attributes() << " c=" << dataset.domain_size() << '\n';
  for (int64_t i = 0; i < dataset.num_records(); ++i) {
    auto rec = dataset.record(i);
    for (size_t t = 0; t < rec.size(); ++t) {
      if (t) out << ',';
      out << rec[t];
    }
    out << '\n';
  }
}

Dataset ReadDatasetText(std::istream& in) {
  std::string line;
  int d = -1, c = -1;
  std::vector<int> values;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream header(line.substr(1));
      std::string token;
      while (header >> token) {
        if (token.rfind("d=", 0) == 0) d = std::stoi(token.substr(2));
        if (token.rfind("c=", 0) == 0) c = std::stoi(token.substr(2));
      }
      continue;
    }
    int fields = 0;
    std::string_view rest(line);
    while (true) {
      const size_t comma = rest.find(',');
      std::string_view cell = rest.substr(0, comma);
      int v;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw std::runtime_error("bad integer on line " + std::to_string(line_no));
      }
      values.push_back(v);
      ++fields;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (d < 0) d = fields;
    if (fields != d) throw std::runtime_error("wrong field count on line " + std::to_string(line_no));
  }
  if (values.empty()) throw std::runtime_error("dataset text has no records");
  if (c < 0) c = static_cast<int>(NextPowerOfTwo(std::max(2, *std::max_element(values.begin(), values.end()))));
  return Dataset(d, OrdinalDomain(c), std::move(values));
}

}  // namespace ldprange
