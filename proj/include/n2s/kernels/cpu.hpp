// Copyright (c) 2026 The n2s Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace n2s::kernels {

enum class SimdLevel {
  kScalar = 0,
  kAvx2 = 1,
};

// Best level this CPU supports (compile-time capped on non-x86 builds).
SimdLevel detect_simd_level();

// Active dispatch level. Initialized once from detect_simd_level(), with an
// N2S_SIMD=scalar|avx2 env override. Requesting an unsupported level falls
// back to scalar.
SimdLevel active_simd_level();

// Swaps the dispatch tables; not safe while kernels are executing on other
// threads. Used by the equivalence tests.
void set_simd_level(SimdLevel level);

const char* simd_level_name(SimdLevel level);

}  // namespace n2s::kernels
