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


#include "dofkit/bounds.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dofkit {
namespace {

// (p, q) and (lambda p, lambda q) give equivalent canonical channels for any
// lambda > 0 (rescale x1, x2, x3 and receiver 2 together).
CanonicalTriple normalize(std::int64_t p, std::int64_t q) {
  const std::int64_t g = std::gcd(p, q);
  return CanonicalTriple::make(p / g, q / g);
}

std::string users_string(const std::array<std::size_t, 3>& u) {
  return std::to_string(u[0] + 1) + "," + std::to_string(u[1] + 1) + "," + std::to_string(u[2] + 1);
}

TripleTrace trace_triple(const GainMatrix& integer_h, const std::array<std::size_t, 3>& users) {
  const CanonicalReduction red = reduce_to_canonical(integer_h, users);
  TripleTrace t;
  t.users = users;
  t.raw_p = red.triple.p;
  t.raw_q = red.triple.q;
  t.triple = normalize(red.triple.p, red.triple.q);
  t.exponent = d_exponent(t.triple.p, t.triple.q);
  t.epsilon = bound_epsilon(t.exponent.d);
  return t;
}

BoundReport assemble(std::size_t k, std::vector<TripleTrace> triples) {
  BoundReport r;
  r.users = k;
  const TripleTrace* best = &triples.front();
  for (const auto& t : triples) {
    if (t.epsilon < best->epsilon) best = &t;
  }
  r.d_exponent = best->exponent.d;
  r.epsilon = best->epsilon;
  const Rational kk(static_cast<std::int64_t>(k));
  r.dof_upper = kk / 2 - kk / 3 * r.epsilon;
  for (const auto& t : triples) {
    r.provenance.push_back("triple (" + users_string(t.users) + "): (p,q) = (" + std::to_string(t.raw_p) + "," +
                           std::to_string(t.raw_q) + ") -> (" + std::to_string(t.triple.p) + "," +
                           std::to_string(t.triple.q) + "), d = " + std::to_string(t.exponent.d) + " [" +
                           to_string(t.exponent.rule) + "], eps = " + to_fraction_string(t.epsilon));
  }
  r.provenance.push_back("delta = min eps = " + to_fraction_string(r.epsilon) + "; bound = K/2 - (K/3) delta = " +
                         to_fraction_string(r.dof_upper));
  r.triples = std::move(triples);
  return r;
}

}  // namespace

std::string to_string(DExponentRule rule) {
  switch (rule) {
    case DExponentRule::kGeneral:
      return "2max(|p|,|q|)+5";
    case DExponentRule::kUnitQ:
      return "2|p|+3 (|q|=1)";
    case DExponentRule::kUnitP:
      return "2|q|+3 (|p|=1)";
  }
  return "?";
}

DExponent d_exponent(std::int64_t p, std::int64_t q) {
  if (p == 0 || q == 0) throw std::invalid_argument("p and q must be nonzero");
  const std::int64_t ap = std::abs(p);
  const std::int64_t aq = std::abs(q);
  DExponent out{2 * std::max(ap, aq) + 5, DExponentRule::kGeneral};
  if (aq == 1 && 2 * ap + 3 < out.d) out = {2 * ap + 3, DExponentRule::kUnitQ};
  if (ap == 1 && 2 * aq + 3 < out.d) out = {2 * aq + 3, DExponentRule::kUnitP};
  return out;
}

Rational bound_epsilon(std::int64_t d) {
  if (d < 1) throw std::invalid_argument("exponent d must be positive");
  return Rational(1, 12 * d + 2);
}

BoundReport rational_3user_bound(std::int64_t p, std::int64_t q) {
  TripleTrace t;
  t.users = {0, 1, 2};
  t.raw_p = p;
  t.raw_q = q;
  t.triple = CanonicalTriple::make(p, q);
  t.exponent = d_exponent(p, q);
  t.epsilon = bound_epsilon(t.exponent.d);
  return assemble(3, {t});
}

BoundReport rational_Kuser_bound(const GainMatrix& h) {
  if (h.k() < 3) throw std::invalid_argument("K-user bound needs K >= 3");
  if (!h.all_rational()) throw std::invalid_argument("K-user bound needs rational gains");
  if (!is_fully_connected(h)) throw std::invalid_argument("K-user bound needs a fully connected channel");
  const Integerized integer = integerize(h);
  std::vector<TripleTrace> triples;
  for (std::size_t i = 0; i < h.k(); ++i) {
    for (std::size_t j = i + 1; j < h.k(); ++j) {
      for (std::size_t k = j + 1; k < h.k(); ++k) triples.push_back(trace_triple(integer.matrix, {i, j, k}));
    }
  }
  return assemble(h.k(), std::move(triples));
}

BoundReport triple_bound(const GainMatrix& h, const std::array<std::size_t, 3>& users) {
  if (std::set<std::size_t>(users.begin(), users.end()).size() != 3) {
    throw std::invalid_argument("triple needs three distinct users");
  }
  for (auto u : users) {
    if (u >= h.k()) throw std::invalid_argument("triple user " + std::to_string(u + 1) + " exceeds K");
  }
  GainMatrix minor = h.principal_minor({users[0], users[1], users[2]});
  std::vector<Rational> column_scale;
  for (std::size_t n = 0; n < 3; ++n) {
    BigInt l = 1;
    for (std::size_t m = n; m < 3; ++m) {
      const Gain& g = minor.at(m, n);
      if (!is_rational(g) || is_zero(g)) {
        throw std::invalid_argument("triple (" + users_string(users) +
                                    ") needs nonzero rational gains on and below the diagonal");
      }
      l = boost::multiprecision::lcm(l, denominator(std::get<Rational>(g)));
    }
    column_scale.emplace_back(l);
  }
  std::vector<std::vector<Gain>> rows(3);
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t n = 0; n < 3; ++n) {
      rows[m].push_back(n <= m ? Gain(std::get<Rational>(minor.at(m, n)) * column_scale[n]) : Gain(Rational(0)));
    }
  }
  TripleTrace t = trace_triple(GainMatrix(std::move(rows)), {0, 1, 2});
  t.users = users;
  return assemble(3, {t});
}

Rational halfK_upper(std::size_t k) {
  if (k < 2) throw std::invalid_argument("K must be at least 2");
  return Rational(static_cast<std::int64_t>(k), 2);
}

double gaussian_entropy_ub(double variance, std::size_t n) {
  if (!(variance >= 0)) throw std::invalid_argument("variance must be nonnegative");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  return 0.5 * static_cast<double>(n) * std::log2(2 * std::numbers::pi * std::numbers::e * (variance + 1.0 / 12));
}

SlopeFit dof_slope_estimate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("slope estimate needs at least two points");
  std::set<double> seen;
  for (const auto& [p, rate] : points) {
    if (!(p > 0)) throw std::invalid_argument("power must be positive");
    if (!seen.insert(p).second) throw std::invalid_argument("duplicate power in slope estimate");
  }
  const double n = static_cast<double>(points.size());
  double mx = 0, my = 0;
  for (const auto& [p, rate] : points) {
    mx += 0.5 * std::log2(p);
    my += rate;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (const auto& [p, rate] : points) {
    const double dx = 0.5 * std::log2(p) - mx;
    sxx += dx * dx;
    sxy += dx * (rate - my);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (const auto& [p, rate] : points) fit.residuals.push_back(rate - (fit.slope * 0.5 * std::log2(p) + fit.intercept));
  return fit;
}

}  // namespace dofkit
