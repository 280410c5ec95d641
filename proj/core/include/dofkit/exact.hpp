// Copyright 2026 The dofkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DOFKIT_EXACT_HPP_
#define DOFKIT_EXACT_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace dofkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "num/den" in lowest terms, den > 0. Integers are written "n/1".
std::string to_fraction_string(const Rational& value);

/// Parses "n", "n/d" (d != 0). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Decimal rendering of an exact rational, rounded half-to-even at
/// `digits` fractional digits ("1.488372" for 64/43, digits = 6).
std::string to_decimal_string(const Rational& value, int digits);

long double to_long_double(const Rational& value);

/// Returns (core, square) with n = core * square^2 and core square-free.
std::pair<std::int64_t, std::int64_t> square_free_split(std::int64_t n);

/// Element (a + b*sqrt(d)) / r of the real quadratic field Q(sqrt d).
///
/// Normalized so that r > 0 and gcd(a, b, r) = 1. All comparisons are
/// exact: the sign of a + b*sqrt(d) is decided by comparing a^2 with
/// b^2 * d when the two terms disagree in sign.
class QuadraticNumber {
 public:
  /// d must be a square-free integer >= 2.
  QuadraticNumber(BigInt a, BigInt b, BigInt r, std::int64_t d);
  QuadraticNumber(const Rational& value, std::int64_t d);

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& r() const { return r_; }
  std::int64_t d() const { return d_; }

  bool is_rational() const { return b_ == 0; }
  int sign() const;
  QuadraticNumber abs() const { return sign() < 0 ? -*this : *this; }
  QuadraticNumber conjugate() const { return {a_, -b_, r_, d_}; }
  BigInt floor() const;
  long double to_long_double() const;

  QuadraticNumber operator-() const { return {-a_, -b_, r_, d_}; }
  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator*(const QuadraticNumber& x, const Rational& s);
  friend QuadraticNumber operator+(const QuadraticNumber& x, const Rational& s);

  friend int compare(const QuadraticNumber& x, const QuadraticNumber& y) { return (x - y).sign(); }
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.r_ == y.r_ && x.d_ == y.d_;
  }

 private:
  void normalize();

  BigInt a_;
  BigInt b_;
  BigInt r_;
  std::int64_t d_;
};

/// Irrational element of a real quadratic field, the only kind of
/// algebraic direct gain with an effective Diophantine constant.
class QuadraticIrrational {
 public:
  /// Value (a + b*sqrt(d)) / r. Square factors of d are moved into b;
  /// throws std::invalid_argument when r == 0, d < 2 after reduction is a
  /// perfect square, or b == 0.
  QuadraticIrrational(std::int64_t a, std::int64_t b, std::int64_t r, std::int64_t d);
  explicit QuadraticIrrational(const QuadraticNumber& value);

  /// sqrt(n) for non-square n >= 2.
  static QuadraticIrrational sqrt(std::int64_t n) { return {0, 1, 1, n}; }
  /// (1 + sqrt 5) / 2.
  static QuadraticIrrational golden_ratio() { return {1, 1, 2, 5}; }

  const QuadraticNumber& value() const { return value_; }
  std::int64_t d() const { return value_.d(); }
  double to_double() const { return static_cast<double>(value_.to_long_double()); }

  /// "(a+b√d)/r" with b's sign folded into the operator.
  std::string to_string() const;

  friend bool operator==(const QuadraticIrrational&, const QuadraticIrrational&) = default;

 private:
  QuadraticNumber value_;
};

}  // namespace dofkit

#endif  // DOFKIT_EXACT_HPP_
