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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dofkit/lattice.hpp"
#include "dofkit/random.hpp"
#include "oracles.hpp"

namespace dofkit {
namespace {

GainMatrix diag_sqrt2(std::size_t k) {
  std::vector<std::vector<Gain>> rows(k, std::vector<Gain>(k, Gain(Rational(1))));
  for (std::size_t i = 0; i < k; ++i) rows[i][i] = QuadraticIrrational::sqrt(2);
  return GainMatrix(rows);
}

std::int64_t brute_decode(double y, double alpha, const TruncatedLattice& lat, std::int64_t s_max) {
  std::int64_t best = 0;
  double best_dist = INFINITY;
  for (std::int64_t x = -lat.max_index(); x <= lat.max_index(); ++x) {
    for (std::int64_t s = -s_max; s <= s_max; ++s) {
      const double d = std::fabs(AlignedPoint{x, s}.value(alpha, lat) - y);
      const bool better = d < best_dist || (d == best_dist && (std::llabs(x) < std::llabs(best) ||
                                                               (std::llabs(x) == std::llabs(best) && x < best)));
      if (better) {
        best = x;
        best_dist = d;
      }
    }
  }
  return best;
}

TEST(Codebook, Examples) {
  const TruncatedLattice a = build_codebook(1, 0.1);
  EXPECT_DOUBLE_EQ(a.spacing(), 1.0);
  EXPECT_EQ(a.max_index(), 1);
  EXPECT_EQ(a.cardinality(), 3);

  const TruncatedLattice b = build_codebook(1e4, 0.05);
  EXPECT_NEAR(b.spacing(), 15.8489, 1e-4);
  EXPECT_EQ(b.max_index(), 6);
  EXPECT_EQ(b.cardinality(), 13);

  const TruncatedLattice c = build_codebook(1e6, 0.2);
  EXPECT_NEAR(c.spacing(), std::pow(10.0, 2.7), 1e-9);
  EXPECT_NEAR(c.spacing(), 501.187, 1e-3);
  EXPECT_EQ(c.max_index(), 1);
  EXPECT_EQ(c.cardinality(), 3);
  EXPECT_NEAR(c.separation_threshold(), 15.8489, 1e-4);
}

TEST(Codebook, RejectsBadParameters) {
  EXPECT_THROW(build_codebook(1e6, 0.25), std::invalid_argument);
  EXPECT_THROW(build_codebook(1e6, 0.0), std::invalid_argument);
  EXPECT_THROW(build_codebook(1e6, 0.3), std::invalid_argument);
  EXPECT_THROW(build_codebook(0, 0.1), std::invalid_argument);
}

TEST(Codebook, PowerAndCardinality) {
  for (double p : {1.0, 10.0, 1e3, 1e4, 1e6, 1e9, 1e12, 1e15}) {
    for (double eps : {0.01, 0.05, 0.1, 0.2, 0.24}) {
      const TruncatedLattice lat = build_codebook(p, eps);
      const double top = lat.codeword(lat.max_index());
      EXPECT_LE(top * top, p * (1 + 1e-12)) << p << " " << eps;
      EXPECT_LE(lat.cardinality(), 2 * std::pow(p, 0.25 - eps) + 1 + 1e-9) << p << " " << eps;
      // maximality of the index
      const double next = lat.codeword(lat.max_index() + 1);
      EXPECT_GT(next * next, p * (1 - 1e-12));
    }
  }
}

TEST(Convergents, SqrtTwo) {
  const auto cs = convergents(QuadraticIrrational::sqrt(2), 100);
  const std::vector<std::pair<int, int>> want{{1, 1}, {3, 2}, {7, 5}, {17, 12}, {41, 29}, {99, 70}};
  ASSERT_EQ(cs.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(cs[i].p, want[i].first);
    EXPECT_EQ(cs[i].q, want[i].second);
  }
}

TEST(Convergents, GoldenRatioIsFibonacci) {
  const auto cs = convergents(QuadraticIrrational::golden_ratio(), 1000);
  for (std::size_t i = 1; i < cs.size(); ++i) {
    EXPECT_EQ(cs[i].q, cs[i - 1].p);
  }
}

struct LiouvilleCase {
  QuadraticIrrational alpha;
  Rational delta;
};

TEST(Liouville, ExpectedConstantsAndOracle) {
  const std::vector<LiouvilleCase> cases{{QuadraticIrrational::sqrt(2), Rational(1, 3)},
                                         {QuadraticIrrational::sqrt(3), Rational(1, 4)},
                                         {QuadraticIrrational::golden_ratio(), Rational(1, 3)}};
  for (const auto& c : cases) {
    const LiouvilleCertificate cert = liouville_delta(c.alpha);
    EXPECT_EQ(cert.delta, c.delta) << c.alpha.to_string();
    EXPECT_EQ(cert.sanity_limit, 10000);
    const long double floor_value = oracle::liouville_min(c.alpha.value().to_long_double(), 10000);
    EXPECT_GT(floor_value, to_long_double(cert.delta)) << c.alpha.to_string();
    EXPECT_GT(cert.convergent_min, to_long_double(cert.delta));
    EXPECT_NEAR(static_cast<double>(cert.convergent_min), static_cast<double>(floor_value), 1e-9);
  }
}

TEST(Liouville, OtherQuadratics) {
  for (const auto& alpha : {QuadraticIrrational::sqrt(5), QuadraticIrrational::sqrt(7),
                            QuadraticIrrational(1, 2, 3, 3), QuadraticIrrational(-5, 1, 2, 13)}) {
    const LiouvilleCertificate cert = liouville_delta(alpha, 2000);
    EXPECT_GT(cert.delta, 0);
    EXPECT_GT(oracle::liouville_min(alpha.value().to_long_double(), 2000), to_long_double(cert.delta))
        << alpha.to_string();
  }
}

TEST(MinSeparation, LargePowerSatisfied) {
  const TruncatedLattice lat = build_codebook(1e6, 0.2);
  const Separation sep = min_separation(QuadraticIrrational::sqrt(2), lat, 10);
  EXPECT_NEAR(sep.min_gap, lat.spacing() * (3 - 2 * std::sqrt(2.0)), 1e-9);
  EXPECT_NEAR(sep.min_gap, 86.0, 0.05);
  EXPECT_NEAR(sep.threshold, 15.85, 0.01);
  EXPECT_TRUE(sep.satisfied);
  EXPECT_TRUE(sep.unique);
  EXPECT_EQ(sep.closest, (AlignedPoint{2, -3}));
  EXPECT_NEAR(sep.min_gap, static_cast<double>(oracle::min_gap(std::sqrt(2.0L), lat.spacing(), 1, 5)), 1e-9);
}

TEST(MinSeparation, SmallPowerViolated) {
  const TruncatedLattice lat = build_codebook(1e4, 0.05);
  const Separation sep = min_separation(QuadraticIrrational::sqrt(2), lat, 40);
  EXPECT_NEAR(sep.min_gap, lat.spacing() * (17 - 12 * std::sqrt(2.0)), 1e-9);
  EXPECT_NEAR(sep.min_gap, 0.466, 1e-3);
  EXPECT_FALSE(sep.satisfied);
  EXPECT_TRUE(sep.unique);
  EXPECT_EQ(sep.closest, (AlignedPoint{12, -17}));
  EXPECT_NEAR(sep.min_gap, static_cast<double>(oracle::min_gap(std::sqrt(2.0L), lat.spacing(), 6, 20)), 1e-9);
}

TEST(MinSeparation, NeverExceedsSpacing) {
  // dx = 0, ds = 1 is always admissible
  for (double p : {1e2, 1e4, 1e8}) {
    const TruncatedLattice lat = build_codebook(p, 0.1);
    const Separation sep = min_separation(QuadraticIrrational::sqrt(3), lat, 0);
    EXPECT_LE(sep.min_gap, lat.spacing() * (1 + 1e-12));
    EXPECT_GT(lat.spacing(), sep.threshold);
  }
}

TEST(MinSeparation, AgreesWithBruteForce) {
  SplitMix64 rng(17);
  const std::vector<QuadraticIrrational> alphas{QuadraticIrrational::sqrt(2), QuadraticIrrational::sqrt(3),
                                                QuadraticIrrational::golden_ratio(), QuadraticIrrational(1, 3, 2, 7),
                                                QuadraticIrrational(-2, 1, 1, 5)};
  std::uniform_int_distribution<std::size_t> pick(0, alphas.size() - 1);
  std::uniform_real_distribution<double> log_p(2, 10);
  std::uniform_real_distribution<double> eps(0.01, 0.24);
  std::uniform_int_distribution<std::int64_t> half_s(1, 30);
  for (int t = 0; t < 60; ++t) {
    const auto& alpha = alphas[pick(rng)];
    const TruncatedLattice lat = build_codebook(std::pow(10.0, log_p(rng)), eps(rng));
    if (lat.max_index() > 60) continue;
    const std::int64_t s = half_s(rng);
    const Separation sep = min_separation(alpha, lat, 2 * s);
    const long double want = oracle::min_gap(alpha.value().to_long_double(), lat.spacing(), lat.max_index(), s);
    EXPECT_NEAR(sep.min_gap, static_cast<double>(want), 1e-9 * lat.spacing()) << alpha.to_string();
    EXPECT_EQ(sep.satisfied, sep.min_gap > sep.threshold);
    EXPECT_GT(sep.min_gap, 0);
  }
}

TEST(Decode, Examples) {
  const TruncatedLattice lat = build_codebook(1e6, 0.2);
  const double alpha = std::sqrt(2.0);
  EXPECT_EQ(nearest_point_decode(alpha * lat.spacing(), alpha, lat, 2), 1);
  EXPECT_EQ(nearest_point_decode(alpha * lat.spacing() + 5.0, alpha, lat, 2), 1);
  const std::int64_t far = nearest_point_decode(alpha * lat.spacing() + 60.0, alpha, lat, 2);
  EXPECT_LE(std::llabs(far), lat.max_index());
  EXPECT_EQ(nearest_point_decode(0.0, alpha, lat, 2), 0);
}

TEST(Decode, AgreesWithBruteForce) {
  SplitMix64 rng(23);
  const TruncatedLattice lat = build_codebook(1e4, 0.05);
  std::uniform_real_distribution<double> y(-2000, 2000);
  for (double alpha : {std::sqrt(2.0), std::sqrt(3.0), (1 + std::sqrt(5.0)) / 2}) {
    for (int t = 0; t < 3000; ++t) {
      const double v = y(rng);
      ASSERT_EQ(nearest_point_decode(v, alpha, lat, 12), brute_decode(v, alpha, lat, 12)) << v;
    }
  }
}

TEST(Simulation, LargePowerHasNoErrors) {
  const SymbolErrorReport rep = simulate_symbol_error(diag_sqrt2(3), 1e6, 0.2, 100000, 42);
  for (auto e : rep.errors) EXPECT_EQ(e, 0u);
  EXPECT_NEAR(rep.analytic_bound, 4.6e-14, 0.05e-14);
  EXPECT_EQ(rep.lattice.cardinality(), 3);
}

TEST(Simulation, ZeroNoiseValidationMode) {
  SymbolErrorOptions opts;
  opts.noise_variance = 0;
  for (double p : {1e4, 1e6}) {
    const double eps = p == 1e4 ? 0.05 : 0.2;
    const SymbolErrorReport rep = simulate_symbol_error(diag_sqrt2(3), p, eps, 5000, 1, opts);
    for (double r : rep.error_rate) EXPECT_EQ(r, 0.0);
  }
}

TEST(Simulation, ViolatedSeparationStillReports) {
  const SymbolErrorReport rep = simulate_symbol_error(diag_sqrt2(3), 1e4, 0.05, 20000, 3);
  ASSERT_EQ(rep.error_rate.size(), 3u);
  for (double r : rep.error_rate) {
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
  }
  EXPECT_GT(rep.errors[0] + rep.errors[1] + rep.errors[2], 0u);
}

TEST(Simulation, IndependentOfThreadCount) {
  SymbolErrorOptions one, four;
  four.threads = 4;
  const auto a = simulate_symbol_error(diag_sqrt2(3), 1e4, 0.05, 30001, 9, one);
  const auto b = simulate_symbol_error(diag_sqrt2(3), 1e4, 0.05, 30001, 9, four);
  EXPECT_EQ(a.errors, b.errors);
}

TEST(Simulation, RejectsBadInput) {
  EXPECT_THROW(simulate_symbol_error(diag_sqrt2(2), 1e6, 0.2, 0, 1), std::invalid_argument);
  EXPECT_THROW(simulate_symbol_error(GainMatrix::from_rationals({{1, 1}, {1, 1}}), 1e6, 0.2, 10, 1),
               std::invalid_argument);
}

TEST(Simulation, InterferenceBound) {
  const TruncatedLattice lat = build_codebook(1e4, 0.05);
  std::vector<std::vector<Gain>> rows{{Gain(QuadraticIrrational::sqrt(2)), Gain(Rational(2)), Gain(Rational(1))},
                                     {Gain(Rational(-3)), Gain(QuadraticIrrational::sqrt(3)), Gain(Rational(1))},
                                     {Gain(Rational(1)), Gain(Rational(1)), Gain(QuadraticIrrational::sqrt(5))}};
  const GainMatrix h(rows);
  EXPECT_EQ(interference_index_bound(h, 0, lat), (3 + 1) * 6);
  EXPECT_EQ(interference_index_bound(h, 1, lat), (2 + 1) * 6);
}

TEST(Rates, Fano) {
  EXPECT_NEAR(fano_rate_bound(3, 0), std::log2(3.0) - 1, 1e-15);
  EXPECT_NEAR(fano_rate_bound(3, 0), 0.585, 1e-3);
  EXPECT_EQ(fano_rate_bound(1, 0.3), 0.0);
  EXPECT_NEAR(fano_rate_bound(9, 0), 2.170, 1e-3);
  EXPECT_EQ(fano_rate_bound(3, 1.0), 0.0);
  EXPECT_THROW(fano_rate_bound(0, 0), std::invalid_argument);
  EXPECT_THROW(fano_rate_bound(3, 1.5), std::invalid_argument);
}

TEST(Rates, RatioIsMonotone) {
  std::vector<double> ratios;
  for (double p : {1e6, 1e9, 1e12}) {
    const TruncatedLattice lat = build_codebook(p, 0.2);
    ratios.push_back(fano_rate_bound(lat.cardinality(), 0) / (0.5 * std::log2(p)));
  }
  EXPECT_NEAR(ratios[0], 0.0587, 1e-4);
  EXPECT_NEAR(ratios[1], 0.0884, 1e-4);
  EXPECT_NEAR(ratios[2], 0.0907, 1e-4);
  EXPECT_LE(ratios[0], ratios[1]);
  EXPECT_LE(ratios[1], ratios[2]);
}

TEST(Rates, AnalyticBound) {
  EXPECT_NEAR(analytic_error_bound(1e6, 0.2), 2 * std::exp(-std::pow(1e6, 0.4) / 8), 1e-25);
}

}  // namespace
}  // namespace dofkit
