// Copyright (c) lindist contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LINDIST_PARALLEL_HPP
#define LINDIST_PARALLEL_HPP

#include <functional>

namespace lindist::detail {

// LINDIST_THREADS override, else hardware concurrency; clamped to [1, 64].
int worker_count() noexcept;

// Runs fn(lo, hi) over a disjoint block partition of [0, n). Block layout
// depends only on n and the worker count, never on scheduling.
void parallel_blocks(long n, const std::function<void(long, long)>& fn);

}  // namespace lindist::detail

#endif
