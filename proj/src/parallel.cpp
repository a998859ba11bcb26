// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#include "lindist/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace lindist::detail {

int worker_count() noexcept {
  if (const char* env = std::getenv("LINDIST_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return std::min(n, 64);
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<int>(std::min(hw, 8u));
}

void parallel_blocks(long n, const std::function<void(long, long)>& fn) {
  if (n <= 0) return;
  long w = std::min<long>(worker_count(), n);
  if (w <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(w - 1));
  long chunk = (n + w - 1) / w;
  for (long b = 1; b < w; ++b) {
    long lo = b * chunk;
    long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fn, lo, hi);
  }
  fn(0, std::min(n, chunk));
  for (auto& t : pool) t.join();
}

}  // namespace lindist::detail
