// Copyright (c) 2026 The n2s Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// Reference kernels. These define the semantics the SIMD variants must match
// up to reassociation; keep them simple enough to audit by eye.

#include <cmath>

#include "n2s/kernels/kernels.hpp"

namespace n2s::kernels::scalar {

template <class T>
void matvec(const T* w, const T* b, const T* x, T* y, size_t out, size_t in) {
  for (size_t i = 0; i < out; ++i) {
    const T* row = w + i * in;
    T acc = 0;
    for (size_t j = 0; j < in; ++j) acc += row[j] * x[j];
    y[i] = acc + (b ? b[i] : T(0));
  }
}

template <class T>
T dot(const T* x, const T* y, size_t n) {
  T acc = 0;
  for (size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

template <class T>
void axpy(T a, const T* x, T* y, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

template <class T>
T sum_sq(const T* x, size_t n) {
  T acc = 0;
  for (size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

template <class T>
void adamw_step(T* p, const T* g, T* m, T* v, size_t n, T lr, T b1, T b2,
                T eps, T wd, T bc1, T bc2) {
  for (size_t i = 0; i < n; ++i) {
    m[i] = b1 * m[i] + (1 - b1) * g[i];
    v[i] = b2 * v[i] + (1 - b2) * g[i] * g[i];
    T mh = m[i] / bc1;
    T vh = v[i] / bc2;
    p[i] -= lr * (mh / (std::sqrt(vh) + eps) + wd * p[i]);
  }
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

}  // namespace n2s::kernels::scalar
