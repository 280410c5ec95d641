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

#ifndef DOFKIT_SUMSET_HPP_
#define DOFKIT_SUMSET_HPP_

// Finite subsets of Z^n and the sumset estimates behind the converse:
// Ruzsa covering, Plunnecke-Ruzsa, the |p.A + q.B| growth bound, the
// entropy-to-partial-sumset construction and Balog-Szemeredi-Gowers.
// Every construction re-verifies its conclusions by enumeration.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dofkit {

using IntVector = std::vector<std::int64_t>;

class IntVectorSet {
 public:
  explicit IntVectorSet(std::size_t dim = 1) : dim_(dim) {}
  /// Deduplicates; throws std::invalid_argument on mixed dimensions.
  IntVectorSet(std::size_t dim, std::vector<IntVector> elements);
  /// One-dimensional set.
  static IntVectorSet of(std::initializer_list<std::int64_t> values);
  static IntVectorSet scalars(const std::vector<std::int64_t>& values);
  static IntVectorSet interval(std::int64_t lo, std::int64_t hi);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(const IntVector& v) const;
  const std::vector<IntVector>& elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  std::string to_string() const;
  friend bool operator==(const IntVectorSet&, const IntVectorSet&) = default;

 private:
  std::size_t dim_;
  std::vector<IntVector> elements_;  // sorted, unique
};

/// A subset F of A x B.
class PairSubset {
 public:
  PairSubset() = default;
  explicit PairSubset(std::vector<std::pair<IntVector, IntVector>> pairs);
  static PairSubset full(const IntVectorSet& a, const IntVectorSet& b);

  std::size_t size() const { return pairs_.size(); }
  const std::vector<std::pair<IntVector, IntVector>>& pairs() const { return pairs_; }
  bool valid_over(const IntVectorSet& a, const IntVectorSet& b) const;

 private:
  std::vector<std::pair<IntVector, IntVector>> pairs_;  // sorted, unique
};

/// T(s) = {(a, b) in A x B : a + b = s}.
struct SumFiber {
  IntVector target;
  std::vector<std::pair<IntVector, IntVector>> pairs;
};

struct SetOp {
  enum class Kind { kSum, kDifference, kDilate, kIterate };
  Kind kind = Kind::kSum;
  std::int64_t factor = 1;  // dilate / iterate

  static SetOp sum() { return {Kind::kSum, 1}; }
  static SetOp difference() { return {Kind::kDifference, 1}; }
  static SetOp dilate(std::int64_t p) { return {Kind::kDilate, p}; }
  static SetOp iterate(std::int64_t p) { return {Kind::kIterate, p}; }
};

IntVectorSet sumset(const IntVectorSet& a, const IntVectorSet& b);
IntVectorSet difference_set(const IntVectorSet& a, const IntVectorSet& b);
/// p . A = {p a}.
IntVectorSet dilate(std::int64_t p, const IntVectorSet& a);
/// p * A = A + ... + A (p >= 1 copies).
IntVectorSet iterated_sumset(std::int64_t p, const IntVectorSet& a);

/// Dispatches on op.kind; `b` is required for sum and difference.
IntVectorSet set_combine(const SetOp& op, const IntVectorSet& a, const std::optional<IntVectorSet>& b = std::nullopt);

/// A +_F B. Throws std::invalid_argument if F has a pair outside A x B.
IntVectorSet partial_sumset(const IntVectorSet& a, const IntVectorSet& b, const PairSubset& f);

std::vector<SumFiber> sum_fibers(const IntVectorSet& a, const IntVectorSet& b);
/// |T(s)| for every s in A + B.
std::map<IntVector, std::size_t> fiber_sizes(const IntVectorSet& a, const IntVectorSet& b);

/// H(X + Y) in bits for independent X ~ U(A), Y ~ U(B).
double entropy_of_sum(const IntVectorSet& a, const IntVectorSet& b);

struct RuzsaCover {
  IntVectorSet cover;           // X subset of B
  std::size_t sumset_size = 0;  // |A + B|
  bool size_bound_holds = false;  // |X| |A| <= |A + B|
  bool covers = false;            // B subset of A - A + X
  bool ok() const { return size_bound_holds && covers; }
};

/// Greedy maximal packing: scan B in lexicographic order and keep b while
/// A + b is disjoint from the translates kept so far.
RuzsaCover ruzsa_cover(const IntVectorSet& a, const IntVectorSet& b);

struct PlunneckeReport {
  std::size_t a_size = 0;
  std::size_t sumset_size = 0;  // |A + B|
  double k_tilde = 0;           // |A + B| / |A|
  std::size_t lhs = 0;          // |p*B - q*B|
  double rhs = 0;               // K~^(p+q) |A|
  bool holds = false;           // decided exactly in integers
};

/// Requires p, q >= 1 and nonempty sets.
PlunneckeReport plunnecke_check(const IntVectorSet& a, const IntVectorSet& b, std::int64_t p, std::int64_t q);

/// d(p, q) = 2 max(|p|, |q|) + 5.
std::int64_t setsum_exponent(std::int64_t p, std::int64_t q);

struct SetsumReport {
  std::size_t a_size = 0;
  std::size_t b_size = 0;
  std::size_t sumset_size = 0;
  double k = 0;             // |A + B| / sqrt(|A||B|), after clamping
  bool k_clamped = false;   // computed value was < 1
  std::int64_t d = 0;
  std::size_t lhs = 0;      // |p.A + q.B|
  double rhs = 0;           // K^d sqrt(|A||B|)
  bool holds = false;       // decided exactly in integers
};

/// Requires p, q nonzero and nonempty sets.
SetsumReport setsum_bound_check(const IntVectorSet& a, const IntVectorSet& b, std::int64_t p, std::int64_t q);

struct ExgReport {
  double entropy = 0;             // H(X + Y)
  double epsilon = 0;             // H(X+Y)/log2|A| - 1, clamped at 0
  double c = 0;
  double fiber_threshold = 0;     // |B| |A|^(-c eps)
  std::size_t s_size = 0;         // |S| = |A +_F B|
  std::size_t f_size = 0;
  double f_lower_bound = 0;       // |A||B| (c - 1)/c
  double sumset_upper_bound = 0;  // |A|^(1/2 + c eps) |B|^(-1/2) |A|^(1/2) |B|^(1/2)
  bool f_bound_holds = false;
  bool sumset_bound_holds = false;
  bool ok() const { return f_bound_holds && sumset_bound_holds; }
};

struct ExgResult {
  PairSubset f;
  ExgReport report;
};

/// S = {s : |T(s)| >= |B| |A|^(-c eps)}, F = {(a, b) : a + b in S}.
/// Throws std::invalid_argument if |A| < |B|, c <= 1 or a set is empty.
ExgResult exg_construct(const IntVectorSet& a, const IntVectorSet& b, double c);

struct BsgReport {
  bool certified = false;
  std::string strategy;  // "direct", "greedy-prune", "exhaustive" or "exhausted"
  double a_prime_min = 0;      // |A| / (4 sqrt2 K)
  double b_prime_min = 0;      // |B| / (4 K)
  double sumset_bound = 0;     // 2^12 K^5 K'^3 sqrt(|A||B|)
  std::size_t a_prime_size = 0;
  std::size_t b_prime_size = 0;
  std::size_t sumset_size = 0;  // |A' + B'|
};

struct BsgResult {
  IntVectorSet a_prime;
  IntVectorSet b_prime;
  BsgReport report;
};

/// Searches for A' subset A, B' subset B satisfying the three
/// Balog-Szemeredi-Gowers conclusions: (A, B) first, then greedy pruning of
/// low-degree vertices of the bipartite graph F, then exhaustive subsets
/// when |A|, |B| <= 12. Throws std::invalid_argument when the hypotheses
/// |F| >= |A||B|/kk and |A +_F B| <= kp sqrt(|A||B|) fail. A failed search
/// returns certified = false.
BsgResult bsg_construct(const IntVectorSet& a, const IntVectorSet& b, const PairSubset& f, double kk, double kp);

/// Relative slack for floating-point bound comparisons (rounding only).
inline constexpr double kBoundSlack = 1e-12;

}  // namespace dofkit

#endif  // DOFKIT_SUMSET_HPP_
