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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace g1kit {

/// Arbitrary-precision integer.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Every construction and verification step in g1kit is carried
/// out in this type; floating point only appears in normal-jump estimates.
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// Base class for every error g1kit reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigInt numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline BigInt denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

inline int sign(const Rational& r) { return r.sign(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "p/q" or "p" for integers.
inline std::string to_string(const Rational& r) { return r.str(); }

namespace detail {

inline BigInt parse_digits(std::string_view s, std::string_view whole) {
  if (s.empty()) throw Error("malformed number '" + std::string(whole) + "'");
  BigInt v = 0;
  for (char c : s) {
    if (c < '0' || c > '9')
      throw Error("malformed number '" + std::string(whole) + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

inline BigInt pow10(std::size_t e) {
  BigInt r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace detail

/// Parses a number without going through binary floating point.
///
/// Accepted forms: integers ("-12"), fractions ("3/4", "-7/21"), decimals
/// ("0.25", ".5", "2."), and decimals with an exponent ("1.5e-3"). Decimal
/// input is converted exactly, so "0.1" is 1/10.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw Error("malformed number '" + std::string(text) + "'");

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = detail::parse_digits(s.substr(0, slash), text);
    BigInt den = detail::parse_digits(s.substr(slash + 1), text);
    if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else {
    long long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (exp_text.empty() || exp_text.size() > 6)
        throw Error("malformed exponent in '" + std::string(text) + "'");
      exponent = detail::parse_digits(exp_text, text).convert_to<long long>();
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string_view int_part = s, frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      int_part = s.substr(0, dot);
      frac_part = s.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty())
      throw Error("malformed number '" + std::string(text) + "'");
    BigInt digits = 0;
    if (!int_part.empty()) digits = detail::parse_digits(int_part, text);
    if (!frac_part.empty())
      digits = digits * detail::pow10(frac_part.size()) +
               detail::parse_digits(frac_part, text);
    exponent -= static_cast<long long>(frac_part.size());
    if (exponent >= 0)
      value = Rational(digits * detail::pow10(static_cast<std::size_t>(exponent)));
    else
      value = Rational(digits, detail::pow10(static_cast<std::size_t>(-exponent)));
  }
  return negative ? Rational(-value) : value;
}

/// gcd of |a| and |b|; gcd(0, 0) = 0.
inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::lcm(a, b);
}

inline Rational abs(const Rational& r) { return r.sign() < 0 ? Rational(-r) : r; }

/// Binomial coefficient C(n, k) as an exact integer.
inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace g1kit
