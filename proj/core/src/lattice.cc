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

#include "dofkit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include <boost/multiprecision/integer.hpp>

#include "dofkit/random.hpp"

namespace dofkit {

double TruncatedLattice::separation_threshold() const { return std::pow(power_, epsilon_); }

TruncatedLattice build_codebook(double power, double epsilon) {
  if (!(power > 0.0) || !std::isfinite(power)) throw std::invalid_argument("power must be positive and finite");
  if (!(epsilon > 0.0 && epsilon < 0.25)) {
    throw std::invalid_argument("epsilon must lie in (0, 1/4), got " + std::to_string(epsilon));
  }
  const long double p = power;
  const long double spacing = std::pow(p, 0.25L + static_cast<long double>(epsilon));
  const long double root = std::sqrt(p);
  auto max_index = static_cast<std::int64_t>(std::floor(root / spacing));
  // keep every codeword inside the power budget despite rounding
  while (max_index > 0 && static_cast<long double>(max_index) * spacing > root) --max_index;
  return TruncatedLattice(power, epsilon, static_cast<double>(spacing), max_index);
}

// ---------------------------------------------------------------------------
// Diophantine constants

std::vector<Convergent> convergents(const QuadraticIrrational& alpha, std::int64_t max_q) {
  std::vector<Convergent> out;
  BigInt p_prev = 1, q_prev = 0;
  BigInt p_prev2 = 0, q_prev2 = 1;
  QuadraticNumber x = alpha.value();
  const QuadraticNumber one(Rational(1), x.d());
  for (;;) {
    const BigInt a = x.floor();
    BigInt p = a * p_prev + p_prev2;
    BigInt q = a * q_prev + q_prev2;
    if (q > max_q) break;
    out.push_back({p, q});
    p_prev2 = std::exchange(p_prev, p);
    q_prev2 = std::exchange(q_prev, q);
    x = one / (x + Rational(-a));
  }
  return out;
}

namespace {

struct MinimalPolynomial {
  BigInt a, b, c;  // a x^2 + b x + c, primitive
  BigInt discriminant() const { return b * b - 4 * a * c; }
};

MinimalPolynomial minimal_polynomial(const QuadraticNumber& alpha) {
  // (r x - a)^2 = b^2 d
  MinimalPolynomial f{alpha.r() * alpha.r(), -2 * alpha.a() * alpha.r(),
                      alpha.a() * alpha.a() - alpha.b() * alpha.b() * alpha.d()};
  BigInt g = boost::multiprecision::gcd(boost::multiprecision::gcd(f.a, f.b), f.c);
  f.a /= g;
  f.b /= g;
  f.c /= g;
  return f;
}

// q * M * |q alpha - p| > 1, i.e. q^2 |alpha - p/q| > 1/M
bool beats(const QuadraticNumber& alpha, const BigInt& p, const BigInt& q, const BigInt& m) {
  QuadraticNumber err = (alpha * Rational(q) + Rational(-p)).abs();
  return (err * Rational(q * m) + Rational(-1)).sign() > 0;
}

}  // namespace

LiouvilleCertificate liouville_delta(const QuadraticIrrational& alpha, std::int64_t sanity_limit) {
  const QuadraticNumber& x = alpha.value();
  const MinimalPolynomial f = minimal_polynomial(x);
  const BigInt disc = f.discriminant();
  // |f'(alpha)| = sqrt(disc), never an integer for irrational alpha
  BigInt m = boost::multiprecision::sqrt(disc) + 1;
  const long double root_disc = std::sqrt(disc.convert_to<long double>());
  const long double lead = abs(f.a).convert_to<long double>();
  constexpr std::int64_t kMaxExhaustive = 10'000'000;

  for (;;) {
    // |f'| <= M on |xi - alpha| < eta, so |alpha - p/q| >= |f(p/q)| / M >= 1/(M q^2) there.
    const long double eta = (m.convert_to<long double>() - root_disc) / (2 * lead) * (1 - 1e-12L);
    const long double delta = 1.0L / m.convert_to<long double>();
    // outside the neighbourhood |alpha - p/q| >= eta > delta / q^2 once q^2 > delta / eta
    const auto limit = static_cast<std::int64_t>(std::ceil(std::sqrt(delta / eta))) + 1;
    if (limit > kMaxExhaustive) throw std::runtime_error("Liouville certificate needs too many exhaustive checks");

    bool ok = true;
    for (std::int64_t q = 1; q <= limit && ok; ++q) {
      const BigInt bq(q);
      const BigInt p0 = (x * Rational(bq)).floor();
      // other numerators sit at distance >= 1 from q alpha, and q M >= 2
      ok = beats(x, p0, bq, m) && beats(x, p0 + 1, bq, m);
    }
    if (ok) {
      LiouvilleCertificate cert{Rational(BigInt(1), m), limit, std::numeric_limits<long double>::infinity(),
                                sanity_limit};
      for (const auto& c : convergents(alpha, sanity_limit)) {
        if (!beats(x, c.p, c.q, m)) {
          throw std::logic_error("Liouville certificate contradicted by convergent " + c.p.str() + "/" + c.q.str());
        }
        const QuadraticNumber err = (x * Rational(c.q) + Rational(-c.p)).abs() * Rational(c.q);
        cert.convergent_min = std::min(cert.convergent_min, err.to_long_double());
      }
      return cert;
    }
    ++m;
  }
}

// ---------------------------------------------------------------------------
// Separation and decoding

Separation min_separation(const QuadraticIrrational& alpha, const TruncatedLattice& lat, std::int64_t s_range) {
  const QuadraticNumber& a = alpha.value();
  const std::int64_t s_max = std::max<std::int64_t>(s_range, 1);
  const std::int64_t dx_max = 2 * lat.max_index();

  // dx = 0: the nearest distinct interference point is one lattice step away.
  QuadraticNumber best(Rational(1), a.d());
  AlignedPoint arg{0, 1};
  bool unique = true;

  for (std::int64_t dx = 1; dx <= dx_max; ++dx) {
    const QuadraticNumber target = -(a * Rational(dx));
    const BigInt lo = target.floor();
    for (const BigInt& cand : {lo, BigInt(lo + 1)}) {
      const BigInt clamped = std::clamp(cand, BigInt(-s_max), BigInt(s_max));
      const QuadraticNumber v = (a * Rational(dx) + Rational(clamped)).abs();
      if (v.sign() == 0) unique = false;
      if (compare(v, best) < 0) {
        best = v;
        arg = AlignedPoint{dx, clamped.convert_to<std::int64_t>()};
      }
    }
  }

  Separation out;
  out.min_gap = static_cast<double>(static_cast<long double>(lat.spacing()) * best.to_long_double());
  out.threshold = lat.separation_threshold();
  out.satisfied = out.min_gap > out.threshold;
  out.unique = unique && best.sign() > 0;
  out.closest = arg;
  return out;
}

std::int64_t nearest_point_decode(double y, double alpha, const TruncatedLattice& lat, std::int64_t s_range) {
  const std::int64_t m = lat.max_index();
  const std::int64_t s_max = std::max<std::int64_t>(s_range, 0);
  const double scaled = y / lat.spacing();

  std::int64_t best_x = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  // visit x = 0, -1, 1, -2, 2, ... so strict '<' realizes the tie-break
  for (std::int64_t step = 0; step <= 2 * m; ++step) {
    const std::int64_t x = (step % 2 == 1) ? -(step + 1) / 2 : step / 2;
    const double residual = scaled - alpha * static_cast<double>(x);
    const auto lo = static_cast<std::int64_t>(std::floor(residual));
    for (std::int64_t s : {lo, lo + 1}) {
      s = std::clamp(s, -s_max, s_max);
      const double dist = std::abs(AlignedPoint{x, s}.value(alpha, lat) - y);
      if (dist < best_dist) {
        best_dist = dist;
        best_x = x;
      }
    }
  }
  return best_x;
}

std::int64_t interference_index_bound(const GainMatrix& h, std::size_t receiver, const TruncatedLattice& lat) {
  BigInt total = 0;
  for (std::size_t tx = 0; tx < h.k(); ++tx) {
    if (tx == receiver) continue;
    if (!is_integer(h.at(tx, receiver))) {
      throw std::invalid_argument("cross gain (" + std::to_string(tx) + "," + std::to_string(receiver) +
                                  ") must be an integer; integerize the matrix first");
    }
    total += abs(numerator(h.rational_at(tx, receiver)));
  }
  return (total * lat.max_index()).convert_to<std::int64_t>();
}

double analytic_error_bound(double power, double epsilon) {
  return 2.0 * std::exp(-std::pow(power, 2.0 * epsilon) / 8.0);
}

double fano_rate_bound(std::int64_t cardinality, double error_rate) {
  if (cardinality < 1) throw std::invalid_argument("codebook cardinality must be >= 1");
  if (!(error_rate >= 0.0 && error_rate <= 1.0)) throw std::invalid_argument("error rate must lie in [0, 1]");
  const double bits = std::log2(static_cast<double>(cardinality));
  return std::max(0.0, bits * (1.0 - error_rate) - 1.0);
}

SymbolErrorReport simulate_symbol_error(const GainMatrix& h, double power, double epsilon, std::uint64_t trials,
                                        std::uint64_t seed, const SymbolErrorOptions& options) {
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (options.noise_variance < 0.0) throw std::invalid_argument("noise variance must be >= 0");
  const std::size_t k = h.k();
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::holds_alternative<QuadraticIrrational>(h.at(i, i))) {
      throw std::invalid_argument("direct gain " + std::to_string(i) + " must be a quadratic irrational");
    }
  }

  const TruncatedLattice lat = build_codebook(power, epsilon);
  std::vector<double> alpha(k);
  std::vector<std::int64_t> s_range(k);
  std::vector<double> gains(k * k);
  for (std::size_t rx = 0; rx < k; ++rx) {
    alpha[rx] = h.numeric(rx, rx);
    s_range[rx] = options.s_range.value_or(interference_index_bound(h, rx, lat));
    for (std::size_t tx = 0; tx < k; ++tx) gains[tx * k + rx] = h.numeric(tx, rx);
  }
  const std::int64_t m = lat.max_index();
  const double sigma = std::sqrt(options.noise_variance);

  auto run_range = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& errors) {
    std::vector<std::int64_t> z(k);
    for (std::uint64_t t = begin; t < end; ++t) {
      SplitMix64 rng(derive_seed(seed, t));
      std::uniform_int_distribution<std::int64_t> pick(-m, m);
      for (auto& zi : z) zi = pick(rng);
      std::normal_distribution<double> noise(0.0, sigma > 0 ? sigma : 1.0);
      for (std::size_t rx = 0; rx < k; ++rx) {
        double y = 0.0;
        for (std::size_t tx = 0; tx < k; ++tx) y += gains[tx * k + rx] * lat.codeword(z[tx]);
        if (sigma > 0) y += noise(rng);
        if (nearest_point_decode(y, alpha[rx], lat, s_range[rx]) != z[rx]) ++errors[rx];
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(std::min<std::uint64_t>(trials, 1024))));
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(k, 0));
  if (threads == 1) {
    run_range(0, trials, partial[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      const std::uint64_t begin = trials * w / threads;
      const std::uint64_t end = trials * (w + 1) / threads;
      pool.emplace_back(run_range, begin, end, std::ref(partial[w]));
    }
    for (auto& th : pool) th.join();
  }

  SymbolErrorReport report{lat, trials, std::vector<std::uint64_t>(k, 0), std::vector<double>(k, 0.0),
                           analytic_error_bound(power, epsilon)};
  for (const auto& counts : partial) {
    for (std::size_t i = 0; i < k; ++i) report.errors[i] += counts[i];
  }
  for (std::size_t i = 0; i < k; ++i) {
    report.error_rate[i] = static_cast<double>(report.errors[i]) / static_cast<double>(trials);
  }
  return report;
}

}  // namespace dofkit
