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

#ifndef LDPRANGE_PARALLEL_H_
#define LDPRANGE_PARALLEL_H_

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ldprange {

// Runs fn(i) for i in [begin, end) on up to `threads` workers using static
// contiguous chunks. The first exception thrown by any worker is rethrown.
template <typename Fn>
void ParallelFor(int64_t begin, int64_t end, int threads, Fn&& fn) {
  const int64_t count = end - begin;
  if (count <= 0) return;
  const int64_t workers = std::clamp<int64_t>(threads, 1, count);
  if (workers == 1) {
    for (int64_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int64_t w = 0; w < workers; ++w) {
      const int64_t lo = begin + count * w / workers;
      const int64_t hi = begin + count * (w + 1) / workers;
      pool.emplace_back([&, lo, hi] {
        try {
          for (int64_t i = lo; i < hi; ++i) fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace ldprange

#endif  // LDPRANGE_PARALLEL_H_
