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

#ifndef DOFKIT_LATTICE_HPP_
#define DOFKIT_LATTICE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dofkit/exact.hpp"
#include "dofkit/gain_matrix.hpp"

namespace dofkit {

/// Scalar lattice {z * P^(1/4+eps)} truncated to [-sqrt P, sqrt P].
class TruncatedLattice {
 public:
  double power() const { return power_; }
  double epsilon() const { return epsilon_; }
  double spacing() const { return spacing_; }
  std::int64_t max_index() const { return max_index_; }
  std::int64_t cardinality() const { return 2 * max_index_ + 1; }
  double codeword(std::int64_t index) const { return static_cast<double>(index) * spacing_; }
  /// P^eps, the gap nearest-point decoding needs.
  double separation_threshold() const;

 private:
  friend TruncatedLattice build_codebook(double power, double epsilon);
  TruncatedLattice(double power, double epsilon, double spacing, std::int64_t max_index)
      : power_(power), epsilon_(epsilon), spacing_(spacing), max_index_(max_index) {}

  double power_;
  double epsilon_;
  double spacing_;
  std::int64_t max_index_;
};

/// Throws std::invalid_argument unless power > 0 and 0 < epsilon < 1/4.
TruncatedLattice build_codebook(double power, double epsilon);

/// A point spacing * (alpha * x_index + s_index) of the received
/// constellation: desired codeword index plus aligned interference index.
struct AlignedPoint {
  std::int64_t x_index = 0;
  std::int64_t s_index = 0;

  double value(double alpha, const TruncatedLattice& lat) const {
    return lat.spacing() * (alpha * static_cast<double>(x_index) + static_cast<double>(s_index));
  }
  friend bool operator==(const AlignedPoint&, const AlignedPoint&) = default;
};

/// Continued-fraction convergent p/q.
struct Convergent {
  BigInt p;
  BigInt q;
};

/// Convergents of alpha (computed exactly in Q(sqrt d)) with q <= max_q.
std::vector<Convergent> convergents(const QuadraticIrrational& alpha, std::int64_t max_q);

/// Certified Liouville constant: |alpha - p/q| > delta / q^2 for all p, q > 0.
struct LiouvilleCertificate {
  Rational delta;
  /// Denominators below this were checked exactly; beyond it the
  /// mean-value bound on the minimal polynomial applies.
  std::int64_t exhaustive_limit = 0;
  /// Smallest q^2 |alpha - p/q| over convergents with q <= sanity_limit.
  long double convergent_min = 0;
  std::int64_t sanity_limit = 0;
};

LiouvilleCertificate liouville_delta(const QuadraticIrrational& alpha, std::int64_t sanity_limit = 10000);

struct Separation {
  double min_gap = 0;        // spacing * min |alpha dx + ds|
  double threshold = 0;      // P^eps
  bool satisfied = false;    // min_gap > threshold
  bool unique = false;       // exact: alpha dx + ds != 0 for every nonzero pair
  AlignedPoint closest;      // minimizing (dx, ds), dx >= 0
};

/// Minimum distance between distinct points alpha*x + s of the received
/// constellation, over index differences |dx| <= 2 max_index and
/// |ds| <= max(s_range, 1). The minimizer is located with exact sign
/// tests in Q(sqrt d); floating point is used only for the reported gap.
Separation min_separation(const QuadraticIrrational& alpha, const TruncatedLattice& lat, std::int64_t s_range);

/// Nearest constellation point to y over |x| <= max_index, |s| <= s_range;
/// returns its codeword index. Ties go to smaller |x|, then smaller x.
std::int64_t nearest_point_decode(double y, double alpha, const TruncatedLattice& lat, std::int64_t s_range);

/// Interference index bound at `receiver`: sum over other transmitters of
/// |h(tx, receiver)| * max_index. Requires integer cross gains.
std::int64_t interference_index_bound(const GainMatrix& h, std::size_t receiver, const TruncatedLattice& lat);

struct SymbolErrorOptions {
  /// 0 switches noise off (validation mode).
  double noise_variance = 1.0;
  /// Decoder interference range per receiver; defaults to interference_index_bound.
  std::optional<std::int64_t> s_range;
  unsigned threads = 1;
};

struct SymbolErrorReport {
  TruncatedLattice lattice;
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> errors;
  std::vector<double> error_rate;
  double analytic_bound = 0;  // 2 exp(-P^(2 eps) / 8)
};

/// Monte Carlo symbol error of the lattice alignment scheme. `h` must have
/// quadratic-irrational diagonal and integer off-diagonal entries. Trial t
/// draws from its own stream derive_seed(seed, t), so results do not depend
/// on `threads`.
SymbolErrorReport simulate_symbol_error(const GainMatrix& h, double power, double epsilon, std::uint64_t trials,
                                        std::uint64_t seed, const SymbolErrorOptions& options = {});

/// 2 exp(-P^(2 eps) / 8).
double analytic_error_bound(double power, double epsilon);

/// Achievable rate from Fano: log2|C| (1 - Pe) - 1, floored at 0.
double fano_rate_bound(std::int64_t cardinality, double error_rate);

}  // namespace dofkit

#endif  // DOFKIT_LATTICE_HPP_
