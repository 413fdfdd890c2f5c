// Copyright 2026 The g1kit Authors.
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

#pragma once

#include <cmath>
#include <ostream>
#include <tuple>

#include "g1kit/rational.hpp"

namespace g1kit {

/// A point or vector in 3-space over scalar type T.
template <typename T>
struct Vec3 {
  T x{}, y{}, z{};

  Vec3() = default;
  Vec3(T x_, T y_, T z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  Vec3& operator*=(const T& s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  Vec3& operator/=(const T& s) {
    x /= s;
    y /= s;
    z /= s;
    return *this;
  }

  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator-(const Vec3& a) { return Vec3(T(-a.x), T(-a.y), T(-a.z)); }
  friend Vec3 operator*(Vec3 a, const T& s) { return a *= s; }
  friend Vec3 operator*(const T& s, Vec3 a) { return a *= s; }
  friend Vec3 operator/(Vec3 a, const T& s) { return a /= s; }

  friend bool operator==(const Vec3& a, const Vec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
  friend bool operator!=(const Vec3& a, const Vec3& b) { return !(a == b); }
  friend bool operator<(const Vec3& a, const Vec3& b) {
    return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
  }

  const T& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  T& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  bool is_zero() const { return x == 0 && y == 0 && z == 0; }
};

using Point3 = Vec3<Rational>;
using Vec3d = Vec3<double>;

template <typename T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <typename T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return Vec3<T>(T(a.y * b.z - a.z * b.y), T(a.z * b.x - a.x * b.z),
                 T(a.x * b.y - a.y * b.x));
}

/// Scalar triple product |a, b, c|.
template <typename T>
T det3(const Vec3<T>& a, const Vec3<T>& b, const Vec3<T>& c) {
  return dot(a, cross(b, c));
}

inline Vec3d to_double(const Point3& p) {
  return {to_double(p.x), to_double(p.y), to_double(p.z)};
}

inline double norm(const Vec3d& v) { return std::sqrt(dot(v, v)); }

/// True when a and b are parallel (including the case that either is zero).
template <typename T>
bool parallel(const Vec3<T>& a, const Vec3<T>& b) {
  return cross(a, b).is_zero();
}

inline std::ostream& operator<<(std::ostream& os, const Point3& p) {
  return os << '(' << p.x << ", " << p.y << ", " << p.z << ')';
}

inline std::ostream& operator<<(std::ostream& os, const Vec3d& p) {
  return os << '(' << p.x << ", " << p.y << ", " << p.z << ')';
}

}  // namespace g1kit
