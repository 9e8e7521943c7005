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

#include "ldprange/postprocess.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ldprange {

namespace {

// One grid seen along one of its attributes.
struct AxisView {
  std::vector<double>* freqs;
  int axis_cells;   // cells along the attribute
  int other_cells;  // cells along the partner attribute (1 for 1-D grids)
  bool attribute_is_row;

  double& cell(int axis, int other) const {
    const size_t idx = attribute_is_row ? static_cast<size_t>(axis) * other_cells + other
                                        : static_cast<size_t>(other) * axis_cells + axis;
    return (*freqs)[idx];
  }
};

std::vector<AxisView> ViewsOf(GridSet& grids, int attribute) {
  std::vector<AxisView> views;
  if (!grids.grids_1d.empty()) {
    auto& g = grids.grids_1d.at(attribute);
    views.push_back({&g.freqs, g.granularity, 1, true});
  }
  for (auto& g : grids.grids_2d) {
    if (g.first == attribute) views.push_back({&g.freqs, g.granularity, g.granularity, true});
    if (g.second == attribute) views.push_back({&g.freqs, g.granularity, g.granularity, false});
  }
  return views;
}

int CoarseCells(const std::vector<AxisView>& views) {
  int coarse = views.front().axis_cells;
  for (const auto& v : views) coarse = std::min(coarse, v.axis_cells);
  for (const auto& v : views) {
    if (v.axis_cells % coarse != 0) {
      throw std::invalid_argument("grid granularities touching an attribute must divide each other");
    }
  }
  return coarse;
}

double ChunkSum(const AxisView& v, int chunk, int per_chunk) {
  double s = 0;
  for (int a = chunk * per_chunk; a < (chunk + 1) * per_chunk; ++a) {
    for (int o = 0; o < v.other_cells; ++o) s += v.cell(a, o);
  }
  return s;
}

}  // namespace

void NormSub(std::span<double> freqs) {
  if (freqs.empty()) return;
  for (double f : freqs) {
    if (!std::isfinite(f)) throw std::invalid_argument("Norm-Sub input must be finite");
  }
  // Every pass either terminates or zeroes at least one more entry.
  for (size_t pass = 0; pass <= freqs.size() + 1; ++pass) {
    double positive_sum = 0;
    size_t positives = 0;
    for (double& f : freqs) {
      if (f < 0) f = 0;
      if (f > 0) {
        positive_sum += f;
        ++positives;
      }
    }
    if (positives == 0) {
      std::fill(freqs.begin(), freqs.end(), 1.0 / static_cast<double>(freqs.size()));
      return;
    }
    const double shift = (1.0 - positive_sum) / static_cast<double>(positives);
    bool negative = false;
    for (double& f : freqs) {
      if (f > 0) {
        f += shift;
        negative |= f < 0;
      }
    }
    if (!negative) return;
  }
}

std::vector<double> NormSubCopy(std::vector<double> freqs) {
  NormSub(freqs);
  return freqs;
}

std::vector<double> ConsistencyWeights(std::span<const int> set_sizes) {
  std::vector<double> weights;
  double total = 0;
  for (int s : set_sizes) {
    if (s < 1) throw std::invalid_argument("consistency set sizes must be positive");
    weights.push_back(1.0 / s);
    total += 1.0 / s;
  }
  for (double& w : weights) w /= total;
  return weights;
}

void AttributeConsistency(GridSet& grids, int attribute) {
  auto views = ViewsOf(grids, attribute);
  if (views.size() < 2) return;
  const int coarse = CoarseCells(views);

  std::vector<int> set_sizes;
  for (const auto& v : views) set_sizes.push_back(v.axis_cells / coarse * v.other_cells);
  const auto weights = ConsistencyWeights(set_sizes);

  std::vector<double> totals(views.size());
  for (int chunk = 0; chunk < coarse; ++chunk) {
    double consensus = 0;
    for (size_t i = 0; i < views.size(); ++i) {
      totals[i] = ChunkSum(views[i], chunk, views[i].axis_cells / coarse);
      consensus += weights[i] * totals[i];
    }
    for (size_t i = 0; i < views.size(); ++i) {
      const int per_chunk = views[i].axis_cells / coarse;
      const double shift = (consensus - totals[i]) / set_sizes[i];
      for (int a = chunk * per_chunk; a < (chunk + 1) * per_chunk; ++a) {
        for (int o = 0; o < views[i].other_cells; ++o) views[i].cell(a, o) += shift;
      }
    }
  }
}

void FullPostprocess(GridSet& grids, int rounds) {
  if (rounds < 1) throw std::invalid_argument("post-processing needs at least one round");
  for (int r = 0; r < rounds; ++r) {
    for (int a = 0; a < grids.num_attributes; ++a) AttributeConsistency(grids, a);
    for (auto& g : grids.grids_1d) NormSub(g.freqs);
    for (auto& g : grids.grids_2d) NormSub(g.freqs);
  }
}

std::vector<std::vector<double>> CoarseMarginals(const GridSet& grids, int attribute) {
  auto views = ViewsOf(const_cast<GridSet&>(grids), attribute);
  std::vector<std::vector<double>> out;
  if (views.empty()) return out;
  const int coarse = CoarseCells(views);
  for (const auto& v : views) {
    std::vector<double> marginal(coarse);
    for (int chunk = 0; chunk < coarse; ++chunk) marginal[chunk] = ChunkSum(v, chunk, v.axis_cells / coarse);
    out.push_back(std::move(marginal));
  }
  return out;
}

double MaxConsistencyResidual(const GridSet& grids) {
  double worst = 0;
  for (int a = 0; a < grids.num_attributes; ++a) {
    const auto marginals = CoarseMarginals(grids, a);
    for (size_t i = 1; i < marginals.size(); ++i) {
      for (size_t j = 0; j < marginals[i].size(); ++j) {
        for (size_t k = 0; k < i; ++k) worst = std::max(worst, std::abs(marginals[i][j] - marginals[k][j]));
      }
    }
  }
  return worst;
}

}  // namespace ldprange
