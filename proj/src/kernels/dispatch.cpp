// Copyright (c) 2026 The n2s Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// Dispatch only; no intrinsics here. The active level is resolved once at
// startup (env-overridable) and swappable from tests.

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "n2s/kernels/kernels.hpp"

namespace n2s::kernels {

namespace {

template <class T>
struct OpsTable {
  void (*matvec)(const T*, const T*, const T*, T*, size_t, size_t);
  T (*dot)(const T*, const T*, size_t);
  void (*axpy)(T, const T*, T*, size_t);
  T (*sum_sq)(const T*, size_t);
  void (*adamw_step)(T*, const T*, T*, T*, size_t, T, T, T, T, T, T, T);
};

template <class T>
constexpr OpsTable<T> scalar_table() {
  return {&scalar::matvec<T>, &scalar::dot<T>, &scalar::axpy<T>,
          &scalar::sum_sq<T>, &scalar::adamw_step<T>};
}

#if defined(N2S_HAVE_AVX2_KERNELS)
template <class T>
constexpr OpsTable<T> avx2_table() {
  return {&avx2::matvec<T>, &avx2::dot<T>, &avx2::axpy<T>,
          &avx2::sum_sq<T>, &avx2::adamw_step<T>};
}
#endif

OpsTable<float> g_ops_f = scalar_table<float>();
OpsTable<double> g_ops_d = scalar_table<double>();
SimdLevel g_level = SimdLevel::kScalar;

template <class T>
OpsTable<T>& ops();
template <>
OpsTable<float>& ops<float>() { return g_ops_f; }
template <>
OpsTable<double>& ops<double>() { return g_ops_d; }

void apply_level(SimdLevel level) {
#if defined(N2S_HAVE_AVX2_KERNELS)
  if (level == SimdLevel::kAvx2 && detect_simd_level() == SimdLevel::kAvx2) {
    g_ops_f = avx2_table<float>();
    g_ops_d = avx2_table<double>();
    g_level = SimdLevel::kAvx2;
    return;
  }
#endif
  g_ops_f = scalar_table<float>();
  g_ops_d = scalar_table<double>();
  g_level = SimdLevel::kScalar;
}

struct Init {
  Init() {
    SimdLevel level = detect_simd_level();
    if (const char* env = std::getenv("N2S_SIMD")) {
      if (std::strcmp(env, "scalar") == 0) level = SimdLevel::kScalar;
      if (std::strcmp(env, "avx2") == 0) level = SimdLevel::kAvx2;
    }
    apply_level(level);
  }
};
Init g_init;

}  // namespace

SimdLevel detect_simd_level() {
#if defined(N2S_HAVE_AVX2_KERNELS)
  static const bool has_avx2 = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  if (has_avx2) return SimdLevel::kAvx2;
#endif
  return SimdLevel::kScalar;
}

SimdLevel active_simd_level() { return g_level; }

void set_simd_level(SimdLevel level) { apply_level(level); }

const char* simd_level_name(SimdLevel level) {
  switch (level) {
    case SimdLevel::kAvx2: return "avx2";
    case SimdLevel::kScalar: return "scalar";
  }
  return "unknown";
}

template <class T>
void matvec(const T* w, const T* b, const T* x, T* y, size_t out, size_t in) {
  ops<T>().matvec(w, b, x, y, out, in);
}

template <class T>
T dot(const T* x, const T* y, size_t n) {
  return ops<T>().dot(x, y, n);
}

template <class T>
void axpy(T a, const T* x, T* y, size_t n) {
  ops<T>().axpy(a, x, y, n);
}

template <class T>
T sum_sq(const T* x, size_t n) {
  return ops<T>().sum_sq(x, n);
}

template <class T>
void adamw_step(T* p, const T* g, T* m, T* v, size_t n, T lr, T b1, T b2,
                T eps, T wd, T bc1, T bc2) {
  ops<T>().adamw_step(p, g, m, v, n, lr, b1, b2, eps, wd, bc1, bc2);
}

template void matvec<float>(const float*, const float*, const float*, float*, size_t, size_t);
template void matvec<double>(const double*, const double*, const double*, double*, size_t, size_t);
template float dot<float>(const float*, const float*, size_t);
template double dot<double>(const double*, const double*, size_t);
template void axpy<float>(float, const float*, float*, size_t);
template void axpy<double>(double, const double*, double*, size_t);
template float sum_sq<float>(const float*, size_t);
template double sum_sq<double>(const double*, size_t);
template void adamw_step<float>(float*, const float*, float*, float*, size_t, float, float, float, float, float, float, float);
template void adamw_step<double>(double*, const double*, double*, double*, size_t, double, double, double, double, double, double, double);

}  // namespace n2s::kernels
