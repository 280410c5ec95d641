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

#include "dofkit/sumset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dofkit/exact.hpp"

namespace dofkit {
namespace {

IntVector add(const IntVector& x, const IntVector& y) {
  IntVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

IntVector subtract(const IntVector& x, const IntVector& y) {
  IntVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

void require_same_dim(const IntVectorSet& a, const IntVectorSet& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

void require_nonempty(const IntVectorSet& a, const IntVectorSet& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("sets must be nonempty");
}

bool leq_with_slack(double lhs, double rhs) { return lhs <= rhs * (1.0 + kBoundSlack); }
bool geq_with_slack(double lhs, double rhs) { return lhs >= rhs * (1.0 - kBoundSlack); }

BigInt ipow(std::size_t base, std::int64_t exp) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

}  // namespace

// ---------------------------------------------------------------------------

IntVectorSet::IntVectorSet(std::size_t dim, std::vector<IntVector> elements)
    : dim_(dim), elements_(std::move(elements)) {
  if (dim_ == 0) throw std::invalid_argument("vector dimension must be >= 1");
  for (const auto& v : elements_) {
    if (v.size() != dim_) {
      throw std::invalid_argument("vector of dimension " + std::to_string(v.size()) + " in a " +
                                  std::to_string(dim_) + "-dimensional set");
    }
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

IntVectorSet IntVectorSet::of(std::initializer_list<std::int64_t> values) {
  return scalars(std::vector<std::int64_t>(values));
}

IntVectorSet IntVectorSet::scalars(const std::vector<std::int64_t>& values) {
  std::vector<IntVector> elems;
  elems.reserve(values.size());
  for (auto v : values) elems.push_back({v});
  return IntVectorSet(1, std::move(elems));
}

IntVectorSet IntVectorSet::interval(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> values;
  for (auto v = lo; v <= hi; ++v) values.push_back(v);
  return scalars(values);
}

bool IntVectorSet::contains(const IntVector& v) const {
  return std::binary_search(elements_.begin(), elements_.end(), v);
}

std::string IntVectorSet::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) out << ',';
    const auto& v = elements_[i];
    if (dim_ == 1) {
      out << v[0];
    } else {
      out << '(';
      for (std::size_t j = 0; j < v.size(); ++j) out << (j ? "," : "") << v[j];
      out << ')';
    }
  }
  out << '}';
  return out.str();
}

PairSubset::PairSubset(std::vector<std::pair<IntVector, IntVector>> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
}

PairSubset PairSubset::full(const IntVectorSet& a, const IntVectorSet& b) {
  std::vector<std::pair<IntVector, IntVector>> pairs;
  pairs.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) pairs.emplace_back(x, y);
  }
  return PairSubset(std::move(pairs));
}

bool PairSubset::valid_over(const IntVectorSet& a, const IntVectorSet& b) const {
  return std::all_of(pairs_.begin(), pairs_.end(),
                     [&](const auto& pr) { return a.contains(pr.first) && b.contains(pr.second); });
}

// ---------------------------------------------------------------------------

IntVectorSet sumset(const IntVectorSet& a, const IntVectorSet& b) {
  require_same_dim(a, b);
  std::vector<IntVector> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(add(x, y));
  }
  return IntVectorSet(a.dim(), std::move(out));
}

IntVectorSet difference_set(const IntVectorSet& a, const IntVectorSet& b) {
  require_same_dim(a, b);
  std::vector<IntVector> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(subtract(x, y));
  }
  return IntVectorSet(a.dim(), std::move(out));
}

IntVectorSet dilate(std::int64_t p, const IntVectorSet& a) {
  std::vector<IntVector> out;
  out.reserve(a.size());
  for (auto v : a) {
    for (auto& c : v) c *= p;
    out.push_back(std::move(v));
  }
  return IntVectorSet(a.dim(), std::move(out));
}

IntVectorSet iterated_sumset(std::int64_t p, const IntVectorSet& a) {
  if (p < 1) throw std::invalid_argument("iterated sumset needs p >= 1, got " + std::to_string(p));
  IntVectorSet out = a;
  for (std::int64_t i = 1; i < p; ++i) out = sumset(out, a);
  return out;
}

IntVectorSet set_combine(const SetOp& op, const IntVectorSet& a, const std::optional<IntVectorSet>& b) {
  switch (op.kind) {
    case SetOp::Kind::kSum:
    case SetOp::Kind::kDifference:
      if (!b) throw std::invalid_argument("sum and difference need a second set");
      return op.kind == SetOp::Kind::kSum ? sumset(a, *b) : difference_set(a, *b);
    case SetOp::Kind::kDilate:
      return dilate(op.factor, a);
    case SetOp::Kind::kIterate:
      return iterated_sumset(op.factor, a);
  }
  throw std::logic_error("unknown set operation");
}

IntVectorSet partial_sumset(const IntVectorSet& a, const IntVectorSet& b, const PairSubset& f) {
  require_same_dim(a, b);
  if (!f.valid_over(a, b)) throw std::invalid_argument("pair subset has a pair outside A x B");
  std::vector<IntVector> out;
  out.reserve(f.size());
  for (const auto& [x, y] : f.pairs()) out.push_back(add(x, y));
  return IntVectorSet(a.dim(), std::move(out));
}

std::vector<SumFiber> sum_fibers(const IntVectorSet& a, const IntVectorSet& b) {
  require_same_dim(a, b);
  std::map<IntVector, std::vector<std::pair<IntVector, IntVector>>> by_sum;
  for (const auto& x : a) {
    for (const auto& y : b) by_sum[add(x, y)].emplace_back(x, y);
  }
  std::vector<SumFiber> out;
  out.reserve(by_sum.size());
  for (auto& [s, pairs] : by_sum) out.push_back({s, std::move(pairs)});
  return out;
}

std::map<IntVector, std::size_t> fiber_sizes(const IntVectorSet& a, const IntVectorSet& b) {
  require_same_dim(a, b);
  std::map<IntVector, std::size_t> sizes;
  for (const auto& x : a) {
    for (const auto& y : b) ++sizes[add(x, y)];
  }
  return sizes;
}

double entropy_of_sum(const IntVectorSet& a, const IntVectorSet& b) {
  require_nonempty(a, b);
  const double total = static_cast<double>(a.size() * b.size());
  double h = 0.0;
  for (const auto& [s, count] : fiber_sizes(a, b)) {
    const double pr = static_cast<double>(count) / total;
    h -= pr * std::log2(pr);
  }
  return h + 0.0;  // avoid -0
}

// ---------------------------------------------------------------------------

RuzsaCover ruzsa_cover(const IntVectorSet& a, const IntVectorSet& b) {
  require_same_dim(a, b);
  require_nonempty(a, b);
  std::set<IntVector> occupied;
  std::vector<IntVector> cover;
  for (const auto& y : b) {
    bool disjoint = true;
    for (const auto& x : a) {
      if (occupied.count(add(x, y))) {
        disjoint = false;
        break;
      }
    }
    if (!disjoint) continue;
    for (const auto& x : a) occupied.insert(add(x, y));
    cover.push_back(y);
  }

  RuzsaCover out{IntVectorSet(a.dim(), std::move(cover)), sumset(a, b).size(), false, false};
  out.size_bound_holds = out.cover.size() * a.size() <= out.sumset_size;
  const IntVectorSet reach = sumset(difference_set(a, a), out.cover);
  out.covers = std::all_of(b.begin(), b.end(), [&](const IntVector& y) { return reach.contains(y); });
  return out;
}

PlunneckeReport plunnecke_check(const IntVectorSet& a, const IntVectorSet& b, std::int64_t p, std::int64_t q) {
  require_same_dim(a, b);
  require_nonempty(a, b);
  if (p < 1 || q < 1) throw std::invalid_argument("Plunnecke-Ruzsa needs p, q >= 1");
  PlunneckeReport r;
  r.a_size = a.size();
  r.sumset_size = sumset(a, b).size();
  r.k_tilde = static_cast<double>(r.sumset_size) / static_cast<double>(r.a_size);
  r.lhs = difference_set(iterated_sumset(p, b), iterated_sumset(q, b)).size();
  r.rhs = std::pow(r.k_tilde, static_cast<double>(p + q)) * static_cast<double>(r.a_size);
  // lhs <= (|A+B|/|A|)^(p+q) |A|  <=>  lhs |A|^(p+q-1) <= |A+B|^(p+q)
  r.holds = BigInt(r.lhs) * ipow(r.a_size, p + q - 1) <= ipow(r.sumset_size, p + q);
  return r;
}

std::int64_t setsum_exponent(std::int64_t p, std::int64_t q) {
  return 2 * std::max(std::abs(p), std::abs(q)) + 5;
}

SetsumReport setsum_bound_check(const IntVectorSet& a, const IntVectorSet& b, std::int64_t p, std::int64_t q) {
  require_same_dim(a, b);
  require_nonempty(a, b);
  if (p == 0 || q == 0) throw std::invalid_argument("setsum bound needs nonzero p and q");
  SetsumReport r;
  r.a_size = a.size();
  r.b_size = b.size();
  r.sumset_size = sumset(a, b).size();
  r.d = setsum_exponent(p, q);
  r.lhs = sumset(dilate(p, a), dilate(q, b)).size();
  const std::size_t ab = r.a_size * r.b_size;
  const double root = std::sqrt(static_cast<double>(ab));
  r.k = static_cast<double>(r.sumset_size) / root;
  // |A+B|^2 < |A||B| means K < 1
  r.k_clamped = BigInt(r.sumset_size) * r.sumset_size < BigInt(ab);
  if (r.k_clamped) {
    r.k = 1.0;
    r.rhs = root;
    r.holds = BigInt(r.lhs) * r.lhs <= BigInt(ab);
  } else {
    r.rhs = std::pow(r.k, static_cast<double>(r.d)) * root;
    // d is odd: K^d sqrt(|A||B|) = |A+B|^d / (|A||B|)^((d-1)/2)
    r.holds = BigInt(r.lhs) * ipow(ab, (r.d - 1) / 2) <= ipow(r.sumset_size, r.d);
  }
  return r;
}

// ---------------------------------------------------------------------------

ExgResult exg_construct(const IntVectorSet& a, const IntVectorSet& b, double c) {
  require_same_dim(a, b);
  require_nonempty(a, b);
  if (a.size() < b.size()) throw std::invalid_argument("exg_construct needs |A| >= |B|");
  if (!(c > 1.0)) throw std::invalid_argument("exg_construct needs c > 1");

  const auto fibers = sum_fibers(a, b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double total = na * nb;

  ExgReport r;
  r.c = c;
  r.entropy = entropy_of_sum(a, b);
  // E[log2(|B| / |T(X+Y)|)] = H(X+Y) - log2|A|, summed from nonnegative terms
  double excess = 0.0;
  for (const auto& fiber : fibers) {
    const double t = static_cast<double>(fiber.pairs.size());
    excess += (t / total) * std::log2(nb / t);
  }
  r.epsilon = a.size() > 1 ? std::max(0.0, excess / std::log2(na)) : 0.0;
  r.fiber_threshold = nb * std::pow(na, -c * r.epsilon);

  std::vector<std::pair<IntVector, IntVector>> pairs;
  for (const auto& fiber : fibers) {
    if (static_cast<double>(fiber.pairs.size()) >= r.fiber_threshold) {
      ++r.s_size;
      pairs.insert(pairs.end(), fiber.pairs.begin(), fiber.pairs.end());
    }
  }
  PairSubset f(std::move(pairs));
  r.f_size = f.size();
  r.f_lower_bound = total * (c - 1.0) / c;
  r.sumset_upper_bound =
      std::pow(na, 0.5 + c * r.epsilon) * std::pow(nb, -0.5) * std::pow(na, 0.5) * std::pow(nb, 0.5);
  r.f_bound_holds = geq_with_slack(static_cast<double>(r.f_size), r.f_lower_bound);
  const std::size_t partial = partial_sumset(a, b, f).size();
  r.sumset_bound_holds = partial == r.s_size && leq_with_slack(static_cast<double>(partial), r.sumset_upper_bound);
  return {std::move(f), r};
}

// ---------------------------------------------------------------------------

namespace {

struct BsgSearch {
  const IntVectorSet& a;
  const IntVectorSet& b;
  BsgReport base;

  bool certify(const std::vector<std::size_t>& ai, const std::vector<std::size_t>& bi, BsgResult& out) const {
    if (ai.empty() || bi.empty()) return false;
    if (!geq_with_slack(static_cast<double>(ai.size()), base.a_prime_min)) return false;
    if (!geq_with_slack(static_cast<double>(bi.size()), base.b_prime_min)) return false;
    std::vector<IntVector> av, bv;
    for (auto i : ai) av.push_back(a.elements()[i]);
    for (auto j : bi) bv.push_back(b.elements()[j]);
    IntVectorSet ap(a.dim(), std::move(av));
    IntVectorSet bp(b.dim(), std::move(bv));
    const std::size_t s = sumset(ap, bp).size();
    if (!leq_with_slack(static_cast<double>(s), base.sumset_bound)) return false;
    out.report = base;
    out.report.certified = true;
    out.report.a_prime_size = ap.size();
    out.report.b_prime_size = bp.size();
    out.report.sumset_size = s;
    out.a_prime = std::move(ap);
    out.b_prime = std::move(bp);
    return true;
  }
};

std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<std::size_t> mask_members(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1U) out.push_back(i);
  }
  return out;
}

}  // namespace

BsgResult bsg_construct(const IntVectorSet& a, const IntVectorSet& b, const PairSubset& f, double kk, double kp) {
  require_same_dim(a, b);
  require_nonempty(a, b);
  if (!(kk >= 1.0)) throw std::invalid_argument("BSG needs K >= 1");
  if (!(kp > 0.0)) throw std::invalid_argument("BSG needs K' > 0");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double root = std::sqrt(na * nb);
  const std::size_t partial = partial_sumset(a, b, f).size();
  if (!geq_with_slack(static_cast<double>(f.size()), na * nb / kk)) {
    throw std::invalid_argument("BSG hypothesis |F| >= |A||B|/K violated");
  }
  if (!leq_with_slack(static_cast<double>(partial), kp * root)) {
    throw std::invalid_argument("BSG hypothesis |A +_F B| <= K' sqrt(|A||B|) violated");
  }

  BsgReport base;
  base.a_prime_min = na / (4.0 * std::sqrt(2.0) * kk);
  base.b_prime_min = nb / (4.0 * kk);
  base.sumset_bound = 4096.0 * std::pow(kk, 5) * std::pow(kp, 3) * root;
  BsgSearch search{a, b, base};
  BsgResult out{IntVectorSet(a.dim()), IntVectorSet(b.dim()), base};

  std::vector<std::size_t> ai = iota_vec(a.size());
  std::vector<std::size_t> bi = iota_vec(b.size());
  if (search.certify(ai, bi, out)) {
    out.report.strategy = "direct";
    return out;
  }

  // greedy: drop the vertex of smallest F-degree while the size floors allow it
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [x, y] : f.pairs()) {
    const auto ia = static_cast<std::size_t>(std::lower_bound(a.begin(), a.end(), x) - a.begin());
    const auto ib = static_cast<std::size_t>(std::lower_bound(b.begin(), b.end(), y) - b.begin());
    edges.emplace_back(ia, ib);
  }
  std::vector<bool> alive_a(a.size(), true), alive_b(b.size(), true);
  for (;;) {
    std::vector<std::size_t> deg_a(a.size(), 0), deg_b(b.size(), 0);
    for (const auto& [ia, ib] : edges) {
      if (alive_a[ia] && alive_b[ib]) {
        ++deg_a[ia];
        ++deg_b[ib];
      }
    }
    const bool can_drop_a = static_cast<double>(ai.size() - 1) >= base.a_prime_min && ai.size() > 1;
    const bool can_drop_b = static_cast<double>(bi.size() - 1) >= base.b_prime_min && bi.size() > 1;
    if (!can_drop_a && !can_drop_b) break;
    std::size_t best = 0;
    bool best_is_a = true;
    std::size_t best_deg = SIZE_MAX;
    if (can_drop_a) {
      for (auto i : ai) {
        if (deg_a[i] < best_deg) best_deg = deg_a[i], best = i, best_is_a = true;
      }
    }
    if (can_drop_b) {
      for (auto j : bi) {
        if (deg_b[j] < best_deg) best_deg = deg_b[j], best = j, best_is_a = false;
      }
    }
    if (best_is_a) {
      alive_a[best] = false;
      ai.erase(std::find(ai.begin(), ai.end(), best));
    } else {
      alive_b[best] = false;
      bi.erase(std::find(bi.begin(), bi.end(), best));
    }
    if (search.certify(ai, bi, out)) {
      out.report.strategy = "greedy-prune";
      return out;
    }
  }

  if (a.size() <= 12 && b.size() <= 12) {
    const auto min_a = static_cast<std::size_t>(std::max(1.0, std::ceil(base.a_prime_min * (1 - kBoundSlack))));
    const auto min_b = static_cast<std::size_t>(std::max(1.0, std::ceil(base.b_prime_min * (1 - kBoundSlack))));
    const std::uint32_t full_a = (1U << a.size()) - 1;
    const std::uint32_t full_b = (1U << b.size()) - 1;
    // smaller subsets have smaller sumsets, so try them first
    for (std::size_t sa = min_a; sa <= a.size(); ++sa) {
      for (std::size_t sb = min_b; sb <= b.size(); ++sb) {
        for (std::uint32_t ma = 1; ma <= full_a; ++ma) {
          if (static_cast<std::size_t>(std::popcount(ma)) != sa) continue;
          for (std::uint32_t mb = 1; mb <= full_b; ++mb) {
            if (static_cast<std::size_t>(std::popcount(mb)) != sb) continue;
            if (search.certify(mask_members(ma), mask_members(mb), out)) {
              out.report.strategy = "exhaustive";
              return out;
            }
          }
        }
      }
    }
  }

  out.report.certified = false;
  out.report.strategy = "exhausted";
  return out;
}

}  // namespace dofkit
