// Copyright 2026 The Lintcc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LINTCC_PARALLEL_HPP_
#define LINTCC_PARALLEL_HPP_

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace lintcc::detail {

// Runs fn(0..n-1) on up to `parallelism` worker threads. The callee stores
// results by index, so output order never depends on scheduling. Exceptions
// must be captured by the callee.
inline void parallel_for(std::size_t n, int parallelism,
                         const std::function<void(std::size_t)>& fn) {
  std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, parallelism)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace lintcc::detail

#endif  // LINTCC_PARALLEL_HPP_
