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
#include <numbers>
#include <random>

#include "dofkit/bounds.hpp"
#include "dofkit/random.hpp"

namespace dofkit {
namespace {

GainMatrix ones(std::size_t k) {
  return GainMatrix(std::vector<std::vector<Gain>>(k, std::vector<Gain>(k, Gain(Rational(1)))));
}

TEST(Exponent, Rules) {
  EXPECT_EQ(d_exponent(2, 1).d, 7);
  EXPECT_EQ(d_exponent(2, 1).rule, DExponentRule::kUnitQ);
  EXPECT_EQ(d_exponent(1, 1).d, 5);
  EXPECT_EQ(d_exponent(2, 2).d, 9);
  EXPECT_EQ(d_exponent(2, 2).rule, DExponentRule::kGeneral);
  EXPECT_EQ(d_exponent(1, -4).d, 11);
  EXPECT_EQ(d_exponent(1, -4).rule, DExponentRule::kUnitP);
  EXPECT_EQ(d_exponent(-3, 5).d, 15);
  EXPECT_THROW(d_exponent(0, 1), std::invalid_argument);
  EXPECT_EQ(bound_epsilon(7), Rational(1, 86));
}

TEST(ThreeUser, Examples) {
  const BoundReport a = rational_3user_bound(2, 1);
  EXPECT_EQ(a.d_exponent, 7);
  EXPECT_EQ(a.epsilon, Rational(1, 86));
  EXPECT_EQ(a.dof_upper, Rational(64, 43));
  EXPECT_EQ(to_decimal_string(a.dof_upper, 6), "1.488372");
  EXPECT_EQ(to_decimal_string(a.dof_upper, 4), "1.4884");

  const BoundReport b = rational_3user_bound(1, 1);
  EXPECT_EQ(b.d_exponent, 5);
  EXPECT_EQ(b.epsilon, Rational(1, 62));
  EXPECT_NEAR(static_cast<double>(to_long_double(b.dof_upper)), 1.48387, 1e-5);

  const BoundReport c = rational_3user_bound(2, 2);
  EXPECT_EQ(c.d_exponent, 9);
  EXPECT_EQ(c.epsilon, Rational(1, 110));
  EXPECT_NEAR(static_cast<double>(to_long_double(c.dof_upper)), 1.49091, 1e-5);

  EXPECT_THROW(rational_3user_bound(0, 1), std::invalid_argument);
  EXPECT_FALSE(a.provenance.empty());
}

TEST(KUser, Examples) {
  const BoundReport three = rational_Kuser_bound(ones(3));
  ASSERT_EQ(three.triples.size(), 1u);
  EXPECT_EQ(three.triples[0].triple, (CanonicalTriple{1, 1}));
  EXPECT_EQ(three.epsilon, Rational(1, 62));
  EXPECT_EQ(three.dof_upper, Rational(3, 2) - Rational(1, 62));

  const GainMatrix embedded = GainMatrix::from_rationals({{1, 5, 7}, {1, 2, 3}, {1, 1, 1}});
  const BoundReport e = rational_Kuser_bound(embedded);
  EXPECT_EQ(e.triples[0].triple, (CanonicalTriple{2, 1}));
  EXPECT_EQ(e.dof_upper, Rational(64, 43));

  const BoundReport four = rational_Kuser_bound(ones(4));
  EXPECT_EQ(four.triples.size(), 4u);
  EXPECT_EQ(four.epsilon, Rational(1, 62));
  EXPECT_EQ(four.dof_upper, Rational(2) - Rational(4, 3) * Rational(1, 62));
  EXPECT_NEAR(static_cast<double>(to_long_double(four.dof_upper)), 1.97849, 1e-5);
  // sorted triples
  EXPECT_EQ(four.triples[0].users, (std::array<std::size_t, 3>{0, 1, 2}));
  EXPECT_EQ(four.triples[3].users, (std::array<std::size_t, 3>{1, 2, 3}));
}

TEST(KUser, Errors) {
  EXPECT_THROW(rational_Kuser_bound(ones(2)), std::invalid_argument);
  EXPECT_THROW(rational_Kuser_bound(CanonicalTriple{2, 1}.matrix()), std::invalid_argument);
  std::vector<std::vector<Gain>> rows(3, std::vector<Gain>(3, Gain(Rational(1))));
  rows[0][0] = QuadraticIrrational::sqrt(2);
  EXPECT_THROW(rational_Kuser_bound(GainMatrix(rows)), std::invalid_argument);
}

TEST(KUser, MinimumTripleWins) {
  // triples through user 3 reduce to (3,1), the others to (2,1)
  const GainMatrix h = GainMatrix::from_rationals({{1, 1, 1, 1}, {1, 2, 1, 1}, {1, 1, 3, 1}, {1, 1, 1, 5}});
  const BoundReport r = rational_Kuser_bound(h);
  Rational smallest = r.triples.front().epsilon;
  for (const auto& t : r.triples) smallest = std::min(smallest, t.epsilon);
  EXPECT_EQ(r.epsilon, smallest);
  EXPECT_EQ(r.epsilon, Rational(1, 110));
  EXPECT_EQ(r.d_exponent, 9);
  EXPECT_EQ(r.dof_upper, Rational(328, 165));
  EXPECT_EQ(r.triples[0].triple, CanonicalTriple::make(2, 1));
}

TEST(KUser, CommonFactorIsDividedOut) {
  const GainMatrix h = GainMatrix::from_rationals({{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {9, 9, 9, 1}});
  const BoundReport r = rational_Kuser_bound(h);
  EXPECT_EQ(r.triples[1].raw_p, 9);
  EXPECT_EQ(r.triples[1].raw_q, 9);
  EXPECT_EQ(r.triples[1].triple, CanonicalTriple::make(1, 1));
  EXPECT_EQ(r.dof_upper, Rational(184, 93));
}

TEST(TripleBound, CanonicalChannel) {
  const BoundReport r = triple_bound(CanonicalTriple{2, 1}.matrix(), {0, 1, 2});
  EXPECT_EQ(r.d_exponent, 7);
  EXPECT_EQ(r.dof_upper, Rational(64, 43));
  EXPECT_EQ(r.triples[0].exponent.rule, DExponentRule::kUnitQ);
  // rational lower triangle is integerized by columns first
  const GainMatrix half = GainMatrix::from_rationals({{Rational(1, 2), 0, 0}, {Rational(1, 2), 1, 0}, {1, 1, 1}});
  EXPECT_EQ(triple_bound(half, {0, 1, 2}).triples[0].triple, triple_bound(scale(half, DiagonalScaling::identity(3),
                                                                                  DiagonalScaling({2, 1, 1})),
                                                                            {0, 1, 2})
                                                                 .triples[0]
                                                                 .triple);
  EXPECT_THROW(triple_bound(GainMatrix::identity(3), {0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(triple_bound(ones(3), {0, 0, 2}), std::invalid_argument);
  EXPECT_THROW(triple_bound(ones(3), {0, 1, 3}), std::invalid_argument);
}

TEST(HalfK, Values) {
  EXPECT_EQ(halfK_upper(2), Rational(1));
  EXPECT_EQ(halfK_upper(3), Rational(3, 2));
  EXPECT_EQ(halfK_upper(5), Rational(5, 2));
  EXPECT_THROW(halfK_upper(1), std::invalid_argument);
}

TEST(GaussianEntropy, Values) {
  const double two_pi_e = 2 * std::numbers::pi * std::numbers::e;
  EXPECT_NEAR(gaussian_entropy_ub(0, 1), 0.5 * std::log2(two_pi_e / 12), 1e-15);
  EXPECT_NEAR(gaussian_entropy_ub(0, 1), 0.2546, 1e-4);
  EXPECT_NEAR(gaussian_entropy_ub(1, 1), 2.105, 1e-3);
  for (std::size_t n : {2u, 5u, 17u}) {
    EXPECT_NEAR(gaussian_entropy_ub(3.5, n), static_cast<double>(n) * gaussian_entropy_ub(3.5, 1), 1e-12);
  }
  EXPECT_THROW(gaussian_entropy_ub(-1, 1), std::invalid_argument);
  EXPECT_THROW(gaussian_entropy_ub(1, 0), std::invalid_argument);
}

TEST(Slope, ExactLines) {
  std::vector<std::pair<double, double>> pts;
  for (double p : {1e2, 1e4, 1e6, 1e9}) pts.emplace_back(p, 1.5 * 0.5 * std::log2(p));
  EXPECT_NEAR(dof_slope_estimate(pts).slope, 1.5, 1e-12);
  pts.clear();
  for (double p : {1e3, 1e6, 1e12}) pts.emplace_back(p, 0.75 * 0.5 * std::log2(p) + 3);
  const SlopeFit fit = dof_slope_estimate(pts);
  EXPECT_NEAR(fit.slope, 0.75, 1e-12);
  EXPECT_NEAR(fit.intercept, 3, 1e-10);
  for (double r : fit.residuals) EXPECT_NEAR(r, 0, 1e-10);
}

TEST(Slope, NoisyData) {
  SplitMix64 rng(8);
  std::normal_distribution<double> noise(0, 0.05);
  std::vector<std::pair<double, double>> pts;
  for (int i = 1; i <= 40; ++i) {
    const double p = std::pow(10.0, 0.5 * i);
    pts.emplace_back(p, 1.19 * 0.5 * std::log2(p) + 0.4 + noise(rng));
  }
  EXPECT_NEAR(dof_slope_estimate(pts).slope, 1.19, 0.01);
}

TEST(Slope, Errors) {
  EXPECT_THROW(dof_slope_estimate({{10, 1}}), std::invalid_argument);
  EXPECT_THROW(dof_slope_estimate({{10, 1}, {10, 2}}), std::invalid_argument);
  EXPECT_THROW(dof_slope_estimate({{0, 1}, {10, 2}}), std::invalid_argument);
}

}  // namespace
}  // namespace dofkit
