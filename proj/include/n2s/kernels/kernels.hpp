// Copyright (c) 2026 The n2s Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "n2s/kernels/cpu.hpp"

// Data-parallel inner loops behind the field/render/train hot paths. Each
// kernel has a scalar reference implementation and an AVX2 variant selected
// at runtime; the variants agree up to floating-point reassociation and are
// equivalence-tested against each other.
namespace n2s::kernels {

// y[i] = dot(w[i*in .. i*in+in), x) + b[i] for i in [0, out). Row-major w.
// b may be null (treated as zero).
template <class T>
void matvec(const T* w, const T* b, const T* x, T* y, size_t out, size_t in);

// Returns dot(x, y).
template <class T>
T dot(const T* x, const T* y, size_t n);

// y[i] += a * x[i].
template <class T>
void axpy(T a, const T* x, T* y, size_t n);

// Returns sum of squares of x.
template <class T>
T sum_sq(const T* x, size_t n);

// Decoupled-weight-decay adaptive-moment update, elementwise over n params:
//   m = b1*m + (1-b1)*g;  v = b2*v + (1-b2)*g^2
//   p -= lr * ( (m/bc1) / (sqrt(v/bc2) + eps) + wd * p )
// bc1/bc2 are the bias corrections 1-b1^t and 1-b2^t.
template <class T>
void adamw_step(T* p, const T* g, T* m, T* v, size_t n, T lr, T b1, T b2, T eps,
                T wd, T bc1, T bc2);

namespace scalar {
template <class T>
void matvec(const T* w, const T* b, const T* x, T* y, size_t out, size_t in);
template <class T>
T dot(const T* x, const T* y, size_t n);
template <class T>
void axpy(T a, const T* x, T* y, size_t n);
template <class T>
T sum_sq(const T* x, size_t n);
template <class T>
void adamw_step(T* p, const T* g, T* m, T* v, size_t n, T lr, T b1, T b2,
                T eps, T wd, T bc1, T bc2);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define N2S_HAVE_AVX2_KERNELS 1
namespace avx2 {
template <class T>
void matvec(const T* w, const T* b, const T* x, T* y, size_t out, size_t in);
template <class T>
T dot(const T* x, const T* y, size_t n);
template <class T>
void axpy(T a, const T* x, T* y, size_t n);
template <class T>
T sum_sq(const T* x, size_t n);
template <class T>
void adamw_step(T* p, const T* g, T* m, T* v, size_t n, T lr, T b1, T b2,
                T eps, T wd, T bc1, T bc2);
}  // namespace avx2
#endif

}  // namespace n2s::kernels
