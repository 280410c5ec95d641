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


#ifndef DOFKIT_BOUNDS_HPP_
#define DOFKIT_BOUNDS_HPP_

// Closed-form degrees-of-freedom bounds for rational interference channels
// and a least-squares slope estimator for simulated sum rates.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dofkit/exact.hpp"
#include "dofkit/gain_matrix.hpp"

namespace dofkit {

enum class DExponentRule {
  kGeneral,          // 2 max(|p|, |q|) + 5
  kUnitQ,            // 2|p| + 3 when |q| = 1
  kUnitP,            // 2|q| + 3 when |p| = 1
};

std::string to_string(DExponentRule rule);

struct DExponent {
  std::int64_t d = 0;
  DExponentRule rule = DExponentRule::kGeneral;
};

/// Smallest applicable exponent. Throws std::invalid_argument on zero p or q.
DExponent d_exponent(std::int64_t p, std::int64_t q);

/// 1 / (12 d + 2).
Rational bound_epsilon(std::int64_t d);

struct TripleTrace {
  std::array<std::size_t, 3> users{};  // 0-based
  std::int64_t raw_p = 0;              // before the gcd normalization
  std::int64_t raw_q = 0;
  CanonicalTriple triple;
  DExponent exponent;
  Rational epsilon;
};

struct BoundReport {
  std::size_t users = 3;
  std::int64_t d_exponent = 0;  // exponent of the triple attaining delta
  Rational epsilon;             // delta = min over triples
  Rational dof_upper;           // K/2 - (K/3) delta
  std::vector<TripleTrace> triples;
  std::vector<std::string> provenance;

  friend bool operator==(const BoundReport& a, const BoundReport& b) {
    return a.users == b.users && a.d_exponent == b.d_exponent && a.epsilon == b.epsilon && a.dof_upper == b.dof_upper;
  }
};

/// 3/2 - 1/(12 d(p, q) + 2) for the canonical channel [1,0,0; 1,p,0; 1,q,1].
BoundReport rational_3user_bound(std::int64_t p, std::int64_t q);

/// K >= 3, fully connected, rational. Integerizes H by columns, reduces every
/// triple i < j < k to (p, q) / gcd(p, q) and returns K/2 - (K/3) min eps.
BoundReport rational_Kuser_bound(const GainMatrix& h);

/// Bound of the single triple `users` of a rational H, which only needs the
/// lower-triangular part of that minor (in the given order) to be nonzero.
/// Covers non-fully-connected 3-user channels such as the canonical form.
BoundReport triple_bound(const GainMatrix& h, const std::array<std::size_t, 3>& users);

/// k / 2. Throws std::invalid_argument for k < 2.
Rational halfK_upper(std::size_t k);

/// (n/2) log2(2 pi e (v + 1/12)): entropy cap for an integer vector of n
/// symbols with average variance v.
double gaussian_entropy_ub(double variance, std::size_t n);

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  std::vector<double> residuals;
};

/// Least squares of sum_rate against (1/2) log2 P over (P, sum_rate) pairs.
/// Throws std::invalid_argument with fewer than two points, a repeated P or
/// a non-positive P.
SlopeFit dof_slope_estimate(const std::vector<std::pair<double, double>>& points);

}  // namespace dofkit

#endif  // DOFKIT_BOUNDS_HPP_
