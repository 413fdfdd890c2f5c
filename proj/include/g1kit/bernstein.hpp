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

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "g1kit/rational.hpp"
#include "g1kit/vec3.hpp"

namespace g1kit {

namespace detail {

template <typename T>
T ratio(const BigInt& num, const BigInt& den) {
  if constexpr (std::is_same_v<T, Rational>) {
    return Rational(num, den);
  } else {
    return static_cast<T>(num.convert_to<double>() / den.convert_to<double>());
  }
}

}  // namespace detail

/// Univariate polynomial of degree n in Bernstein-Bezier form,
///   p(t) = sum_k c_k B_k^n(t),  B_k^n(t) = C(n,k) (1-t)^(n-k) t^k.
///
/// The degree is structural: leading zero coefficients are kept, so a
/// degree-8 determinant stays degree 8 even when it vanishes at t = 1.
template <typename T>
class BernsteinPoly {
 public:
  BernsteinPoly() : coeffs_{T(0)} {}
  explicit BernsteinPoly(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error("BernsteinPoly needs at least one coefficient");
  }
  BernsteinPoly(std::initializer_list<T> coeffs)
      : BernsteinPoly(std::vector<T>(coeffs)) {}

  /// Zero polynomial of the given degree.
  static BernsteinPoly zero(std::size_t degree) {
    return BernsteinPoly(std::vector<T>(degree + 1, T(0)));
  }
  /// Constant polynomial c, written in degree-n form.
  static BernsteinPoly constant(const T& c, std::size_t degree = 0) {
    return BernsteinPoly(std::vector<T>(degree + 1, c));
  }

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<T>& coeffs() const { return coeffs_; }
  const T& operator[](std::size_t k) const { return coeffs_[k]; }
  T& operator[](std::size_t k) { return coeffs_[k]; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const T& c) { return c == 0; });
  }

  /// de Casteljau evaluation. Parameters outside [0, 1] extrapolate.
  T operator()(const T& t) const {
    std::vector<T> b = coeffs_;
    const T s = T(1) - t;
    for (std::size_t r = 1; r < b.size(); ++r)
      for (std::size_t k = 0; k + r < b.size(); ++k) b[k] = s * b[k] + t * b[k + 1];
    return b[0];
  }

  /// Same polynomial expressed in degree + by.
  BernsteinPoly raised(std::size_t by = 1) const {
    std::vector<T> c = coeffs_;
    for (std::size_t step = 0; step < by; ++step) {
      const std::size_t n = c.size() - 1;
      std::vector<T> r(n + 2);
      r[0] = c[0];
      r[n + 1] = c[n];
      for (std::size_t k = 1; k <= n; ++k) {
        const T w = detail::ratio<T>(k, n + 1);
        r[k] = w * c[k - 1] + (T(1) - w) * c[k];
      }
      c = std::move(r);
    }
    return BernsteinPoly(std::move(c));
  }

  /// Derivative, degree n-1. The derivative of a degree-0 polynomial is the
  /// degree-0 zero polynomial.
  BernsteinPoly derivative() const {
    const std::size_t n = degree();
    if (n == 0) return zero(0);
    std::vector<T> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = T(n) * (coeffs_[k + 1] - coeffs_[k]);
    return BernsteinPoly(std::move(d));
  }

  BernsteinPoly& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend BernsteinPoly operator*(BernsteinPoly p, const T& s) { return p *= s; }
  friend BernsteinPoly operator*(const T& s, BernsteinPoly p) { return p *= s; }
  friend BernsteinPoly operator-(BernsteinPoly p) {
    for (auto& c : p.coeffs_) c = -c;
    return p;
  }

  /// Sum of two polynomials; the lower-degree operand is degree-raised.
  friend BernsteinPoly operator+(const BernsteinPoly& a, const BernsteinPoly& b) {
    return combine(a, b, [](const T& x, const T& y) { return T(x + y); });
  }
  friend BernsteinPoly operator-(const BernsteinPoly& a, const BernsteinPoly& b) {
    return combine(a, b, [](const T& x, const T& y) { return T(x - y); });
  }

  /// Product in Bernstein form:
  ///   (ab)_k = sum_i C(m,i) C(n,k-i) / C(m+n,k) a_i b_(k-i).
  friend BernsteinPoly operator*(const BernsteinPoly& a, const BernsteinPoly& b) {
    const std::size_t m = a.degree(), n = b.degree();
    std::vector<T> r(m + n + 1, T(0));
    for (std::size_t k = 0; k <= m + n; ++k) {
      const BigInt denom = binomial(m + n, k);
      const std::size_t lo = k > n ? k - n : 0;
      const std::size_t hi = std::min(k, m);
      for (std::size_t i = lo; i <= hi; ++i) {
        if (a.coeffs_[i] == 0 || b.coeffs_[k - i] == 0) continue;
        const T w = detail::ratio<T>(binomial(m, i) * binomial(n, k - i), denom);
        r[k] += w * a.coeffs_[i] * b.coeffs_[k - i];
      }
    }
    return BernsteinPoly(std::move(r));
  }

  /// Exact structural equality (same degree, same coefficients).
  friend bool operator==(const BernsteinPoly& a, const BernsteinPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const BernsteinPoly& a, const BernsteinPoly& b) {
    return !(a == b);
  }

 private:
  template <typename Op>
  static BernsteinPoly combine(const BernsteinPoly& a, const BernsteinPoly& b, Op op) {
    const std::size_t n = std::max(a.degree(), b.degree());
    const BernsteinPoly ra = a.raised(n - a.degree());
    const BernsteinPoly rb = b.raised(n - b.degree());
    std::vector<T> r(n + 1);
    for (std::size_t k = 0; k <= n; ++k) r[k] = op(ra.coeffs_[k], rb.coeffs_[k]);
    return BernsteinPoly(std::move(r));
  }

  std::vector<T> coeffs_;
};

/// Vector-valued polynomial with three Bernstein components of one degree.
template <typename T>
class VecPoly3 {
 public:
  VecPoly3() = default;

  /// Components of unequal degree are degree-raised to the largest one.
  VecPoly3(BernsteinPoly<T> x, BernsteinPoly<T> y, BernsteinPoly<T> z) {
    const std::size_t n = std::max({x.degree(), y.degree(), z.degree()});
    c_[0] = x.raised(n - x.degree());
    c_[1] = y.raised(n - y.degree());
    c_[2] = z.raised(n - z.degree());
  }

  /// From vector-valued Bernstein coefficients.
  explicit VecPoly3(const std::vector<Vec3<T>>& coeffs) {
    if (coeffs.empty()) throw Error("VecPoly3 needs at least one coefficient");
    for (int d = 0; d < 3; ++d) {
      std::vector<T> comp;
      comp.reserve(coeffs.size());
      for (const auto& v : coeffs) comp.push_back(v[d]);
      c_[d] = BernsteinPoly<T>(std::move(comp));
    }
  }

  std::size_t degree() const { return c_[0].degree(); }
  const BernsteinPoly<T>& operator[](int d) const { return c_[d]; }
  const BernsteinPoly<T>& x() const { return c_[0]; }
  const BernsteinPoly<T>& y() const { return c_[1]; }
  const BernsteinPoly<T>& z() const { return c_[2]; }

  /// k-th vector coefficient.
  Vec3<T> coeff(std::size_t k) const { return {c_[0][k], c_[1][k], c_[2][k]}; }
  std::vector<Vec3<T>> coeff_vectors() const {
    std::vector<Vec3<T>> r;
    for (std::size_t k = 0; k <= degree(); ++k) r.push_back(coeff(k));
    return r;
  }

  Vec3<T> operator()(const T& t) const { return {c_[0](t), c_[1](t), c_[2](t)}; }

  bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero(); }

  friend VecPoly3 operator+(const VecPoly3& a, const VecPoly3& b) {
    return VecPoly3(a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2]);
  }
  friend VecPoly3 operator-(const VecPoly3& a, const VecPoly3& b) {
    return VecPoly3(a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2]);
  }
  friend VecPoly3 operator*(const T& s, const VecPoly3& a) {
    return VecPoly3(a.c_[0] * s, a.c_[1] * s, a.c_[2] * s);
  }
  /// Componentwise product with a scalar polynomial.
  friend VecPoly3 operator*(const BernsteinPoly<T>& s, const VecPoly3& a) {
    return VecPoly3(s * a.c_[0], s * a.c_[1], s * a.c_[2]);
  }
  friend bool operator==(const VecPoly3& a, const VecPoly3& b) {
    return a.c_[0] == b.c_[0] && a.c_[1] == b.c_[1] && a.c_[2] == b.c_[2];
  }

 private:
  BernsteinPoly<T> c_[3];
};

template <typename T>
VecPoly3<T> derivative(const VecPoly3<T>& p) {
  return VecPoly3<T>(p[0].derivative(), p[1].derivative(), p[2].derivative());
}

/// Pointwise cross product; degree deg(a) + deg(b).
template <typename T>
VecPoly3<T> cross(const VecPoly3<T>& a, const VecPoly3<T>& b) {
  return VecPoly3<T>(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                     a[0] * b[1] - a[1] * b[0]);
}

/// Determinant |a, b, c| of three vector polynomials, by cofactor expansion
/// along a. The result has degree deg(a) + deg(b) + deg(c).
template <typename T>
BernsteinPoly<T> det3(const VecPoly3<T>& a, const VecPoly3<T>& b, const VecPoly3<T>& c) {
  const BernsteinPoly<T> m0 = b[1] * c[2] - b[2] * c[1];
  const BernsteinPoly<T> m1 = b[2] * c[0] - b[0] * c[2];
  const BernsteinPoly<T> m2 = b[0] * c[1] - b[1] * c[0];
  return a[0] * m0 + a[1] * m1 + a[2] * m2;
}

using ExactPoly = BernsteinPoly<Rational>;
using ExactVecPoly3 = VecPoly3<Rational>;

/// Coefficients written as scale * ints with coprime integers.
struct Primitive {
  Rational scale;
  std::vector<BigInt> ints;
};

/// Scales a rational coefficient list to the smallest coprime integers, sign
/// normalized so the first nonzero entry is positive. The all-zero list maps
/// to scale 0 and zeros.
inline Primitive normalize_primitive(const std::vector<Rational>& coeffs) {
  Primitive out;
  out.ints.assign(coeffs.size(), 0);
  BigInt common_den = 1;
  for (const auto& c : coeffs)
    if (c != 0) common_den = lcm(common_den, denominator_of(c));
  BigInt g = 0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    out.ints[k] = numerator_of(coeffs[k]) * (common_den / denominator_of(coeffs[k]));
    g = gcd(g, out.ints[k]);
  }
  if (g == 0) {
    out.scale = 0;
    return out;
  }
  auto first = std::find_if(out.ints.begin(), out.ints.end(),
                            [](const BigInt& v) { return v != 0; });
  if (*first < 0) g = -g;
  for (auto& v : out.ints) v /= g;
  out.scale = Rational(g, common_den);
  return out;
}

inline Primitive normalize_primitive(const ExactPoly& p) {
  return normalize_primitive(p.coeffs());
}

/// Primitive form of a list of points, flattened x0,y0,z0,x1,...
inline Primitive normalize_primitive(const std::vector<Point3>& points) {
  std::vector<Rational> flat;
  flat.reserve(points.size() * 3);
  for (const auto& p : points) {
    flat.push_back(p.x);
    flat.push_back(p.y);
    flat.push_back(p.z);
  }
  return normalize_primitive(flat);
}

inline std::vector<Rational> to_rationals(std::initializer_list<long long> v) {
  std::vector<Rational> r;
  for (long long x : v) r.emplace_back(x);
  return r;
}

}  // namespace g1kit
