// Copyright (c) 2026 The n2s Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace n2s {

template <class T>
struct Vec2 {
  T x = 0, y = 0;

  constexpr T& operator[](int i) { return (&x)[i]; }
  constexpr const T& operator[](int i) const { return (&x)[i]; }
};

template <class T>
struct Vec3 {
  T x = 0, y = 0, z = 0;

  constexpr T& operator[](int i) { return (&x)[i]; }
  constexpr const T& operator[](int i) const { return (&x)[i]; }

  template <class U>
  constexpr Vec3<U> cast() const {
    return {static_cast<U>(x), static_cast<U>(y), static_cast<U>(z)};
  }
};

using Vec2f = Vec2<float>;
using Vec2d = Vec2<double>;
using Vec3f = Vec3<float>;
using Vec3d = Vec3<double>;

template <class T> constexpr Vec2<T> operator+(Vec2<T> a, Vec2<T> b) { return {a.x + b.x, a.y + b.y}; }
template <class T> constexpr Vec2<T> operator-(Vec2<T> a, Vec2<T> b) { return {a.x - b.x, a.y - b.y}; }
template <class T> constexpr Vec2<T> operator*(Vec2<T> a, T s) { return {a.x * s, a.y * s}; }
template <class T> constexpr Vec2<T> operator*(T s, Vec2<T> a) { return a * s; }
template <class T> constexpr T dot(Vec2<T> a, Vec2<T> b) { return a.x * b.x + a.y * b.y; }
template <class T> T norm(Vec2<T> a) { return std::sqrt(dot(a, a)); }

template <class T> constexpr Vec3<T> operator+(Vec3<T> a, Vec3<T> b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
template <class T> constexpr Vec3<T> operator-(Vec3<T> a, Vec3<T> b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
template <class T> constexpr Vec3<T> operator-(Vec3<T> a) { return {-a.x, -a.y, -a.z}; }
template <class T> constexpr Vec3<T> operator*(Vec3<T> a, T s) { return {a.x * s, a.y * s, a.z * s}; }
template <class T> constexpr Vec3<T> operator*(T s, Vec3<T> a) { return a * s; }
template <class T> constexpr Vec3<T> operator*(Vec3<T> a, Vec3<T> b) { return {a.x * b.x, a.y * b.y, a.z * b.z}; }
template <class T> constexpr Vec3<T> operator/(Vec3<T> a, T s) { return {a.x / s, a.y / s, a.z / s}; }
template <class T> constexpr Vec3<T>& operator+=(Vec3<T>& a, Vec3<T> b) { a = a + b; return a; }
template <class T> constexpr Vec3<T>& operator-=(Vec3<T>& a, Vec3<T> b) { a = a - b; return a; }
template <class T> constexpr Vec3<T>& operator*=(Vec3<T>& a, T s) { a = a * s; return a; }

template <class T> constexpr T dot(Vec3<T> a, Vec3<T> b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
template <class T> constexpr Vec3<T> cross(Vec3<T> a, Vec3<T> b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
template <class T> T norm(Vec3<T> a) { return std::sqrt(dot(a, a)); }
template <class T> Vec3<T> normalized(Vec3<T> a) {
  T n = norm(a);
  return n > T(0) ? a / n : Vec3<T>{0, 0, 0};
}
template <class T> constexpr Vec3<T> min(Vec3<T> a, Vec3<T> b) {
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
}
template <class T> constexpr Vec3<T> max(Vec3<T> a, Vec3<T> b) {
  return {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
}
template <class T> constexpr T max_component(Vec3<T> a) { return std::max(a.x, std::max(a.y, a.z)); }

template <class T>
constexpr T clamp(T v, T lo, T hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}
template <class T>
constexpr Vec3<T> clamp(Vec3<T> v, T lo, T hi) {
  return {clamp(v.x, lo, hi), clamp(v.y, lo, hi), clamp(v.z, lo, hi)};
}

// Row-major 3x3 matrix.
template <class T>
struct Mat3 {
  std::array<T, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  static constexpr Mat3 identity() { return Mat3{}; }

  constexpr T& operator()(int r, int c) { return m[r * 3 + c]; }
  constexpr const T& operator()(int r, int c) const { return m[r * 3 + c]; }

  constexpr Mat3 transposed() const {
    Mat3 t;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) t(r, c) = (*this)(c, r);
    return t;
  }
};

using Mat3f = Mat3<float>;
using Mat3d = Mat3<double>;

template <class T>
constexpr Vec3<T> operator*(const Mat3<T>& m, Vec3<T> v) {
  return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z,
          m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
          m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}

template <class T>
constexpr Mat3<T> operator*(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return r;
}

template <class T>
constexpr T det(const Mat3<T>& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

// Unit quaternion, scalar-first (w, x, y, z).
template <class T>
struct Quat {
  T w = 1, x = 0, y = 0, z = 0;

  T squared_norm() const { return w * w + x * x + y * y + z * z; }
  T norm() const { return std::sqrt(squared_norm()); }

  Quat normalized() const {
    T n = norm();
    return {w / n, x / n, y / n, z / n};
  }

  Quat conjugate() const { return {w, -x, -y, -z}; }

  Mat3<T> to_matrix() const {
    Mat3<T> r;
    T xx = x * x, yy = y * y, zz = z * z;
    T xy = x * y, xz = x * z, yz = y * z;
    T wx = w * x, wy = w * y, wz = w * z;
    r(0, 0) = 1 - 2 * (yy + zz); r(0, 1) = 2 * (xy - wz);     r(0, 2) = 2 * (xz + wy);
    r(1, 0) = 2 * (xy + wz);     r(1, 1) = 1 - 2 * (xx + zz); r(1, 2) = 2 * (yz - wx);
    r(2, 0) = 2 * (xz - wy);     r(2, 1) = 2 * (yz + wx);     r(2, 2) = 1 - 2 * (xx + yy);
    return r;
  }

  static Quat from_axis_angle(Vec3<T> axis, T angle) {
    T s = std::sin(angle / 2);
    Vec3<T> a = normalized(axis);
    return {std::cos(angle / 2), a.x * s, a.y * s, a.z * s};
  }
};

using Quatf = Quat<float>;
using Quatd = Quat<double>;

template <class T>
constexpr Quat<T> operator*(const Quat<T>& a, const Quat<T>& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

template <class T>
Vec3<T> rotate(const Quat<T>& q, Vec3<T> v) {
  Vec3<T> u{q.x, q.y, q.z};
  Vec3<T> t = T(2) * cross(u, v);
  return v + q.w * t + cross(u, t);
}

// Axis-aligned box.
template <class T>
struct Box3 {
  Vec3<T> lo{std::numeric_limits<T>::max(), std::numeric_limits<T>::max(), std::numeric_limits<T>::max()};
  Vec3<T> hi{std::numeric_limits<T>::lowest(), std::numeric_limits<T>::lowest(), std::numeric_limits<T>::lowest()};

  bool empty() const { return lo.x > hi.x || lo.y > hi.y || lo.z > hi.z; }
  Vec3<T> center() const { return (lo + hi) * T(0.5); }
  Vec3<T> extent() const { return hi - lo; }

  void expand(Vec3<T> p) {
    lo = min(lo, p);
    hi = max(hi, p);
  }
  bool contains(Vec3<T> p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z && p.z <= hi.z;
  }
};

using Box3f = Box3<float>;
using Box3d = Box3<double>;

}  // namespace n2s
