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

#include "dofkit/exact.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/integer.hpp>

namespace dofkit {
namespace {

int sign_of(const BigInt& x) { return x.sign(); }

std::int64_t common_d(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.d() == y.d()) return x.d();
  if (x.is_rational()) return y.d();
  if (y.is_rational()) return x.d();
  throw std::invalid_argument("quadratic numbers from different fields: sqrt(" +
                              std::to_string(x.d()) + ") vs sqrt(" + std::to_string(y.d()) + ")");
}

}  // namespace

std::string to_fraction_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty integer in '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw std::invalid_argument("malformed integer in '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
      }
    }
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_decimal_string(const Rational& value, int digits) {
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
  BigInt num = numerator(value) * scale;
  const BigInt& den = denominator(value);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt q = num / den;
  BigInt rem = num % den;
  // round half to even
  const int cmp = BigInt(2 * rem).compare(den);
  if (cmp > 0 || (cmp == 0 && (q & 1) == 1)) ++q;

  std::string body = q.str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && q != 0) body.insert(0, "-");
  return body;
}

long double to_long_double(const Rational& value) {
  return numerator(value).convert_to<long double>() / denominator(value).convert_to<long double>();
}

std::pair<std::int64_t, std::int64_t> square_free_split(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("square_free_split expects n > 0");
  std::int64_t core = 1;
  std::int64_t square = 1;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    int power = 0;
    while (n % f == 0) {
      n /= f;
      ++power;
    }
    for (int i = 0; i < power / 2; ++i) square *= f;
    if (power % 2 == 1) core *= f;
  }
  core *= n;
  return {core, square};
}

// ---------------------------------------------------------------------------
// QuadraticNumber

QuadraticNumber::QuadraticNumber(BigInt a, BigInt b, BigInt r, std::int64_t d)
    : a_(std::move(a)), b_(std::move(b)), r_(std::move(r)), d_(d) {
  if (r_ == 0) throw std::invalid_argument("quadratic number with zero denominator");
  if (d_ < 2) throw std::invalid_argument("quadratic field needs d >= 2");
  normalize();
}

QuadraticNumber::QuadraticNumber(const Rational& value, std::int64_t d)
    : QuadraticNumber(numerator(value), BigInt(0), denominator(value), d) {}

void QuadraticNumber::normalize() {
  if (r_ < 0) {
    r_ = -r_;
    a_ = -a_;
    b_ = -b_;
  }
  BigInt g = boost::multiprecision::gcd(boost::multiprecision::gcd(a_, b_), r_);
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    r_ /= g;
  }
}

int QuadraticNumber::sign() const {
  const int sa = sign_of(a_);
  const int sb = sign_of(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const BigInt lhs = a_ * a_;
  const BigInt rhs = b_ * b_ * d_;
  return lhs > rhs ? sa : sb;
}

long double QuadraticNumber::to_long_double() const {
  return (a_.convert_to<long double>() +
          b_.convert_to<long double>() * std::sqrt(static_cast<long double>(d_))) /
         r_.convert_to<long double>();
}

BigInt QuadraticNumber::floor() const {
  BigInt c(static_cast<long long>(std::floor(to_long_double())));
  // float estimate may be off by one in either direction
  while ((*this + Rational(-c)).sign() < 0) --c;
  while ((*this + Rational(-(c + 1))).sign() >= 0) ++c;
  return c;
}

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  const std::int64_t d = common_d(x, y);
  return {x.a_ * y.r_ + y.a_ * x.r_, x.b_ * y.r_ + y.b_ * x.r_, x.r_ * y.r_, d};
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) { return x + (-y); }

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  const std::int64_t d = common_d(x, y);
  return {x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, x.r_ * y.r_, d};
}

QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (y.sign() == 0) throw std::domain_error("division by zero in Q(sqrt d)");
  // 1/y = r (a - b sqrt d) / (a^2 - b^2 d)
  const std::int64_t d = common_d(x, y);
  const BigInt norm = y.a_ * y.a_ - y.b_ * y.b_ * d;
  QuadraticNumber inverse(y.r_ * y.a_, -y.r_ * y.b_, norm, d);
  return x * inverse;
}

QuadraticNumber operator*(const QuadraticNumber& x, const Rational& s) {
  return {x.a_ * numerator(s), x.b_ * numerator(s), x.r_ * denominator(s), x.d_};
}

QuadraticNumber operator+(const QuadraticNumber& x, const Rational& s) {
  return x + QuadraticNumber(s, x.d_);
}

// ---------------------------------------------------------------------------
// QuadraticIrrational

namespace {

QuadraticNumber make_irrational(std::int64_t a, std::int64_t b, std::int64_t r, std::int64_t d) {
  if (r == 0) throw std::invalid_argument("quadratic irrational with zero denominator");
  if (d < 2) throw std::invalid_argument("quadratic irrational needs d >= 2, got " + std::to_string(d));
  const auto [core, square] = square_free_split(d);
  if (core == 1) {
    throw std::invalid_argument("sqrt(" + std::to_string(d) + ") is rational");
  }
  if (b == 0) throw std::invalid_argument("quadratic irrational with b = 0 is rational");
  return {BigInt(a), BigInt(b) * square, BigInt(r), core};
}

}  // namespace

QuadraticIrrational::QuadraticIrrational(std::int64_t a, std::int64_t b, std::int64_t r, std::int64_t d)
    : value_(make_irrational(a, b, r, d)) {}

QuadraticIrrational::QuadraticIrrational(const QuadraticNumber& value) : value_(value) {
  if (value_.is_rational()) throw std::invalid_argument("value is rational");
  if (square_free_split(value_.d()).first != value_.d()) {
    throw std::invalid_argument("field parameter must be square-free");
  }
}

std::string QuadraticIrrational::to_string() const {
  const BigInt& b = value_.b();
  const char op = b < 0 ? '-' : '+';
  const BigInt mag = b < 0 ? BigInt(-b) : b;
  return "(" + value_.a().str() + op + mag.str() + "√" + std::to_string(value_.d()) + ")/" +
         value_.r().str();
}

}  // namespace dofkit
