// Copyright (c) 2026 The n2s Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace n2s {

// Worker count: hardware concurrency capped by the N2S_THREADS env var.
int thread_count();

// Runs fn(worker, begin, end) over a static contiguous partition of [0, n).
// Partitioning depends only on n and thread_count(), so per-index work that
// derives randomness from the index itself is reproducible across runs.
void parallel_chunks(size_t n, const std::function<void(int, size_t, size_t)>& fn);

// Convenience: fn(i) for i in [0, n), statically partitioned.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace n2s
