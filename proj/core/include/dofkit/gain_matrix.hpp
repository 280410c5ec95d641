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

#ifndef DOFKIT_GAIN_MATRIX_HPP_
#define DOFKIT_GAIN_MATRIX_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "dofkit/exact.hpp"

namespace dofkit {

/// A channel gain: an exact rational or a quadratic irrational.
using Gain = std::variant<Rational, QuadraticIrrational>;

bool is_zero(const Gain& g);
bool is_rational(const Gain& g);
bool is_integer(const Gain& g);
double to_double(const Gain& g);
std::string to_string(const Gain& g);
Gain operator*(const Gain& g, const Rational& s);

/// K x K interference channel gains. Entry (i, j) is the gain from
/// transmitter i to receiver j, so receiver j sees column j:
///   y_j = sum_i h(i, j) * x_i + z_j.
class GainMatrix {
 public:
  /// Throws std::invalid_argument unless rows form a square matrix with K >= 2.
  explicit GainMatrix(std::vector<std::vector<Gain>> rows);
  static GainMatrix from_rationals(std::initializer_list<std::initializer_list<Rational>> rows);
  static GainMatrix identity(std::size_t k);

  std::size_t k() const { return k_; }
  const Gain& at(std::size_t tx, std::size_t rx) const { return entries_.at(tx * k_ + rx); }
  double numeric(std::size_t tx, std::size_t rx) const { return to_double(at(tx, rx)); }
  const Rational& rational_at(std::size_t tx, std::size_t rx) const;

  bool all_rational() const;
  bool all_integer() const;

  /// Principal minor on `users` (in the given order).
  GainMatrix principal_minor(const std::vector<std::size_t>& users) const;

  friend bool operator==(const GainMatrix&, const GainMatrix&) = default;

 private:
  GainMatrix() = default;

  std::size_t k_ = 0;
  std::vector<Gain> entries_;
};

/// Positive diagonal scaling D_t (transmitter side) or D_r (receiver side).
class DiagonalScaling {
 public:
  /// Throws std::invalid_argument if any entry is <= 0.
  explicit DiagonalScaling(std::vector<Rational> diag);
  static DiagonalScaling identity(std::size_t k) { return DiagonalScaling(std::vector<Rational>(k, Rational(1))); }

  std::size_t size() const { return diag_.size(); }
  const Rational& operator[](std::size_t i) const { return diag_[i]; }
  const std::vector<Rational>& entries() const { return diag_; }
  DiagonalScaling inverse() const;

  friend bool operator==(const DiagonalScaling&, const DiagonalScaling&) = default;

 private:
  std::vector<Rational> diag_;
};

/// The pair (p, q) of the reduced 3-user channel [1,0,0; 1,p,0; 1,q,1].
struct CanonicalTriple {
  std::int64_t p = 1;
  std::int64_t q = 1;

  /// Throws std::invalid_argument if p or q is zero.
  static CanonicalTriple make(std::int64_t p, std::int64_t q);
  GainMatrix matrix() const;

  friend bool operator==(const CanonicalTriple&, const CanonicalTriple&) = default;
};

/// Outcome of reducing a 3x3 principal minor to canonical form.
struct CanonicalReduction {
  CanonicalTriple triple;
  std::array<Rational, 3> row_scale;     // D^_t = diag(bd, ad, ab)
  std::array<Rational, 3> column_scale;  // D^_r = diag(1/(abd), 1/a, 1/(abf))
  GainMatrix lower;                      // minor with strictly-upper entries zeroed
};

bool is_fully_connected(const GainMatrix& h);

/// Entry (i, j) of the result is dt[i] * h(i, j) * dr[j].
GainMatrix scale(const GainMatrix& h, const DiagonalScaling& dt, const DiagonalScaling& dr);

struct Integerized {
  GainMatrix matrix;  // H * D_r, nonzero integers
  DiagonalScaling column_scale;
};

/// D_r(j) is the LCM of the reduced denominators in column j.
/// Throws std::invalid_argument on irrational or zero entries.
Integerized integerize(const GainMatrix& h);

/// Reduces the principal minor on `users` (0-based, in order). The minor,
/// after zeroing its strictly-upper part, is read as [a,0,0; b,c,0; d,e,f]
/// and mapped to [1,0,0; 1,cd,0; 1,be,1]. Throws std::invalid_argument if
/// any of a..f is zero or non-integer.
CanonicalReduction reduce_to_canonical(const GainMatrix& h, const std::array<std::size_t, 3>& users);

/// Receiver-side offsets of the integer-input deterministic channel:
/// delta_j = 1/2 log2(1 + 2 * sum_i h(i, j)^2).
std::vector<double> deterministic_offset(const GainMatrix& h);

}  // namespace dofkit

#endif  // DOFKIT_GAIN_MATRIX_HPP_
