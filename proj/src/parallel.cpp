// Copyright (c) 2026 The n2s Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "n2s/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace n2s {

int thread_count() {
  static const int count = [] {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("N2S_THREADS")) {
      int cap = std::atoi(env);
      if (cap > 0) n = std::min(n, cap);
    }
    return n;
  }();
  return count;
}

void parallel_chunks(size_t n, const std::function<void(int, size_t, size_t)>& fn) {
  if (n == 0) return;
  const int workers = std::min<size_t>(thread_count(), n);
  if (workers == 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const size_t base = n / workers, rem = n % workers;
  size_t begin = 0;
  for (int w = 0; w < workers; ++w) {
    size_t len = base + (static_cast<size_t>(w) < rem ? 1 : 0);
    size_t end = begin + len;
    threads.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
    begin = end;
  }
  for (auto& t : threads) t.join();
}

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  parallel_chunks(n, [&fn](int, size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace n2s
