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

#include "dofkit/gain_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/integer.hpp>

namespace dofkit {

bool is_zero(const Gain& g) {
  // quadratic irrationals are never zero
  const auto* r = std::get_if<Rational>(&g);
  return r != nullptr && *r == 0;
}

bool is_rational(const Gain& g) { return std::holds_alternative<Rational>(g); }

bool is_integer(const Gain& g) {
  const auto* r = std::get_if<Rational>(&g);
  return r != nullptr && denominator(*r) == 1;
}

double to_double(const Gain& g) {
  if (const auto* r = std::get_if<Rational>(&g)) return static_cast<double>(to_long_double(*r));
  return std::get<QuadraticIrrational>(g).to_double();
}

std::string to_string(const Gain& g) {
  if (const auto* r = std::get_if<Rational>(&g)) return to_fraction_string(*r);
  return std::get<QuadraticIrrational>(g).to_string();
}

Gain operator*(const Gain& g, const Rational& s) {
  if (const auto* r = std::get_if<Rational>(&g)) return Gain(*r * s);
  if (s == 0) return Gain(Rational(0));
  return Gain(QuadraticIrrational(std::get<QuadraticIrrational>(g).value() * s));
}

// ---------------------------------------------------------------------------

GainMatrix::GainMatrix(std::vector<std::vector<Gain>> rows) {
  k_ = rows.size();
  if (k_ < 2) throw std::invalid_argument("gain matrix needs K >= 2 users, got " + std::to_string(k_));
  entries_.reserve(k_ * k_);
  for (auto& row : rows) {
    if (row.size() != k_) {
      throw std::invalid_argument("gain matrix must be square: row of length " + std::to_string(row.size()) +
                                  " in a " + std::to_string(k_) + "-user matrix");
    }
    for (auto& g : row) entries_.push_back(std::move(g));
  }
}

GainMatrix GainMatrix::from_rationals(std::initializer_list<std::initializer_list<Rational>> rows) {
  std::vector<std::vector<Gain>> out;
  for (const auto& row : rows) out.emplace_back(row.begin(), row.end());
  return GainMatrix(std::move(out));
}

GainMatrix GainMatrix::identity(std::size_t k) {
  std::vector<std::vector<Gain>> rows(k, std::vector<Gain>(k, Gain(Rational(0))));
  for (std::size_t i = 0; i < k; ++i) rows[i][i] = Rational(1);
  return GainMatrix(std::move(rows));
}

const Rational& GainMatrix::rational_at(std::size_t tx, std::size_t rx) const {
  const auto* r = std::get_if<Rational>(&at(tx, rx));
  if (r == nullptr) {
    throw std::invalid_argument("entry (" + std::to_string(tx) + "," + std::to_string(rx) + ") is irrational");
  }
  return *r;
}

bool GainMatrix::all_rational() const {
  for (const auto& g : entries_) {
    if (!is_rational(g)) return false;
  }
  return true;
}

bool GainMatrix::all_integer() const {
  for (const auto& g : entries_) {
    if (!is_integer(g)) return false;
  }
  return true;
}

GainMatrix GainMatrix::principal_minor(const std::vector<std::size_t>& users) const {
  std::vector<std::vector<Gain>> rows;
  for (std::size_t i : users) {
    if (i >= k_) throw std::out_of_range("user index " + std::to_string(i) + " out of range");
    auto& row = rows.emplace_back();
    for (std::size_t j : users) row.push_back(at(i, j));
  }
  return GainMatrix(std::move(rows));
}

// ---------------------------------------------------------------------------

DiagonalScaling::DiagonalScaling(std::vector<Rational> diag) : diag_(std::move(diag)) {
  for (const auto& d : diag_) {
    if (d <= 0) throw std::invalid_argument("diagonal scaling entries must be positive, got " + to_fraction_string(d));
  }
}

DiagonalScaling DiagonalScaling::inverse() const {
  std::vector<Rational> inv;
  inv.reserve(diag_.size());
  for (const auto& d : diag_) inv.push_back(1 / d);
  return DiagonalScaling(std::move(inv));
}

CanonicalTriple CanonicalTriple::make(std::int64_t p, std::int64_t q) {
  if (p == 0 || q == 0) throw std::invalid_argument("canonical triple needs nonzero p and q");
  return CanonicalTriple{p, q};
}

GainMatrix CanonicalTriple::matrix() const {
  return GainMatrix::from_rationals({{1, 0, 0}, {1, Rational(p), 0}, {1, Rational(q), 1}});
}

// ---------------------------------------------------------------------------

bool is_fully_connected(const GainMatrix& h) {
  for (std::size_t i = 0; i < h.k(); ++i) {
    for (std::size_t j = 0; j < h.k(); ++j) {
      if (is_zero(h.at(i, j))) return false;
    }
  }
  return true;
}

GainMatrix scale(const GainMatrix& h, const DiagonalScaling& dt, const DiagonalScaling& dr) {
  if (dt.size() != h.k() || dr.size() != h.k()) {
    throw std::invalid_argument("scaling dimension mismatch: matrix is " + std::to_string(h.k()) + "x" +
                                std::to_string(h.k()) + ", scalings have " + std::to_string(dt.size()) + " and " +
                                std::to_string(dr.size()) + " entries");
  }
  std::vector<std::vector<Gain>> rows(h.k());
  for (std::size_t i = 0; i < h.k(); ++i) {
    for (std::size_t j = 0; j < h.k(); ++j) rows[i].push_back(h.at(i, j) * (dt[i] * dr[j]));
  }
  return GainMatrix(std::move(rows));
}

Integerized integerize(const GainMatrix& h) {
  if (!h.all_rational()) throw std::invalid_argument("integerize needs rational entries");
  if (!is_fully_connected(h)) throw std::invalid_argument("integerize needs nonzero entries");
  std::vector<Rational> column_scale;
  for (std::size_t j = 0; j < h.k(); ++j) {
    BigInt l = 1;
    for (std::size_t i = 0; i < h.k(); ++i) l = boost::multiprecision::lcm(l, denominator(h.rational_at(i, j)));
    column_scale.emplace_back(l);
  }
  DiagonalScaling dr(std::move(column_scale));
  return {scale(h, DiagonalScaling::identity(h.k()), dr), dr};
}

CanonicalReduction reduce_to_canonical(const GainMatrix& h, const std::array<std::size_t, 3>& users) {
  const GainMatrix minor = h.principal_minor({users[0], users[1], users[2]});
  auto entry = [&](std::size_t m, std::size_t n, const char* name) -> Rational {
    const Gain& g = minor.at(m, n);
    if (!is_integer(g) || is_zero(g)) {
      throw std::invalid_argument(std::string("canonical reduction needs a nonzero integer '") + name +
                                  "' at minor position (" + std::to_string(m) + "," + std::to_string(n) +
                                  "), got " + to_string(g));
    }
    return std::get<Rational>(g);
  };
  const Rational a = entry(0, 0, "a");
  const Rational b = entry(1, 0, "b");
  const Rational c = entry(1, 1, "c");
  const Rational d = entry(2, 0, "d");
  const Rational e = entry(2, 1, "e");
  const Rational f = entry(2, 2, "f");

  const Rational p = c * d;
  const Rational q = b * e;
  CanonicalReduction out{
      CanonicalTriple::make(numerator(p).convert_to<std::int64_t>(), numerator(q).convert_to<std::int64_t>()),
      {b * d, a * d, a * b},
      {1 / (a * b * d), 1 / a, 1 / (a * b * f)},
      GainMatrix::from_rationals({{a, 0, 0}, {b, c, 0}, {d, e, f}}),
  };
  return out;
}

std::vector<double> deterministic_offset(const GainMatrix& h) {
  std::vector<double> out;
  out.reserve(h.k());
  for (std::size_t rx = 0; rx < h.k(); ++rx) {
    double power = 0.0;
    for (std::size_t tx = 0; tx < h.k(); ++tx) {
      const double g = h.numeric(tx, rx);
      power += g * g;
    }
    out.push_back(0.5 * std::log2(1.0 + 2.0 * power));
  }
  return out;
}

}  // namespace dofkit
