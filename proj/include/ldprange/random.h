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

#ifndef LDPRANGE_RANDOM_H_
#define LDPRANGE_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace ldprange {

// SplitMix64 finalizer. Bijective on 64-bit words; used both as the OLH hash
// family and for deriving independent RNG substreams from a single seed.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds an ordered list of identifiers (repeat, approach id, group, user...)
// into a substream seed.
constexpr uint64_t DeriveSeed(uint64_t seed, std::initializer_list<uint64_t> path) {
  uint64_t h = Mix64(seed);
  for (uint64_t part : path) h = Mix64(h ^ Mix64(part + 0x632be59bd9b4e019ULL));
  return h;
}

// Small-state 64-bit generator (SplitMix64 stream). Satisfies
// UniformRandomBitGenerator so it plugs into <random> distributions; cheap
// enough to instantiate once per simulated user.
class SplitMix64 {
 public:
  using result_type = uint64_t;

  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  uint64_t state_;
};

// Uniform double in [0, 1) with 53 random bits.
inline double UniformUnit(SplitMix64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound). Lemire's multiply-shift; bias is < 2^-32 for
// the bounds used here, and it keeps results identical across standard
// libraries (std::uniform_int_distribution is implementation-defined).
inline uint64_t UniformBelow(SplitMix64& rng, uint64_t bound) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(rng()) * bound) >> 64);
}

}  // namespace ldprange

#endif  // LDPRANGE_RANDOM_H_
