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
#include <sstream>

#include "dofkit/multilevel.hpp"

namespace dofkit {
namespace {

MessageTuple tuple(std::vector<std::int64_t> m1, std::vector<std::int64_t> m2, std::vector<std::int64_t> m3) {
  return MessageTuple{{std::move(m1), std::move(m2), std::move(m3)}};
}

// Parity rules of the default (Q = 8, p = 2, q = 1) scheme, per level.
std::vector<std::int64_t> parity_decode(int receiver, std::int64_t y, int levels) {
  std::vector<std::int64_t> out;
  std::int64_t v = receiver == 2 ? y / 2 : y;
  for (int l = 0; l < levels; ++l, v /= 8) {
    const std::int64_t w = v % 8;
    if (receiver == 1) out.push_back(w % 2 == 1 ? 1 : 0);
    if (receiver == 2) out.push_back(w - w % 2);
    if (receiver == 3) out.push_back(w);
  }
  return out;
}

TEST(Validate, DefaultSchemeIsValid) {
  const SchemeValidation v = validate_scheme(LevelScheme::default_scheme());
  EXPECT_TRUE(v.valid);
  EXPECT_TRUE(v.diagnostics.empty());
}

TEST(Validate, AmbiguousReceiverOne) {
  LevelScheme s = LevelScheme::default_scheme();
  s.alphabets[1] = {0, 1, 2};
  const SchemeValidation v = validate_scheme(s);
  EXPECT_FALSE(v.valid);
  bool mentions = false;
  for (const auto& d : v.diagnostics) mentions = mentions || d.find("does not determine m1") != std::string::npos;
  EXPECT_TRUE(mentions);
}

TEST(Validate, DegenerateSchemeIsValid) {
  const LevelScheme s{{{{0}, {0}, {0}}}, 2, 1, CanonicalTriple{2, 1}};
  EXPECT_TRUE(validate_scheme(s).valid);
  EXPECT_EQ(scheme_dof(s), 0.0);
}

TEST(Validate, OtherFailures) {
  LevelScheme carry = LevelScheme::default_scheme();
  carry.alphabets[1] = {0, 2, 4, 6};
  carry.alphabets[0] = {0, 1};
  carry.base = 8;  // 1 + 6 + 2 = 9 carries
  EXPECT_FALSE(validate_scheme(carry).valid);

  LevelScheme odd = LevelScheme::default_scheme();
  odd.alphabets[2] = {0, 1};  // 2 does not divide q * 1
  EXPECT_FALSE(validate_scheme(odd).valid);

  LevelScheme neg = LevelScheme::default_scheme();
  neg.alphabets[0] = {-1, 0};
  EXPECT_FALSE(validate_scheme(neg).valid);

  LevelScheme empty = LevelScheme::default_scheme();
  empty.alphabets[2].clear();
  EXPECT_FALSE(validate_scheme(empty).valid);
}

TEST(Encode, Examples) {
  const LevelScheme s1 = LevelScheme::default_scheme(1);
  EXPECT_EQ(encode(s1, tuple({1}, {4}, {2})), (std::array<std::int64_t, 3>{1, 4, 2}));
  const LevelScheme s2 = LevelScheme::default_scheme(2);
  EXPECT_EQ(encode(s2, tuple({0, 0}, {4, 2}, {0, 0}))[1], 20);
  EXPECT_EQ(encode(s2, tuple({0, 0}, {0, 0}, {0, 0})), (std::array<std::int64_t, 3>{0, 0, 0}));
  EXPECT_THROW(encode(s1, tuple({3}, {4}, {2})), std::invalid_argument);
  EXPECT_THROW(encode(s2, tuple({1}, {4}, {2})), std::invalid_argument);
}

TEST(Decode, Examples) {
  const LevelScheme s1 = LevelScheme::default_scheme(1);
  const auto y = transmit(s1, encode(s1, tuple({1}, {4}, {2})));
  EXPECT_EQ(y, (std::array<std::int64_t, 3>{7, 10, 2}));
  EXPECT_EQ(decode(s1, 1, 7), std::vector<std::int64_t>{1});
  EXPECT_EQ(decode(s1, 2, 10), std::vector<std::int64_t>{4});
  EXPECT_EQ(decode(s1, 3, 2), std::vector<std::int64_t>{2});
  for (int r = 1; r <= 3; ++r) EXPECT_EQ(decode(s1, r, 0), std::vector<std::int64_t>{0});

  const LevelScheme s2 = LevelScheme::default_scheme(2);
  EXPECT_EQ(transmit(s2, encode(s2, tuple({0, 0}, {4, 2}, {0, 0})))[1], 40);
  EXPECT_EQ(decode(s2, 2, 40), (std::vector<std::int64_t>{4, 2}));
}

TEST(Decode, Errors) {
  const LevelScheme s = LevelScheme::default_scheme(1);
  EXPECT_THROW(decode(s, 1, -1), std::invalid_argument);
  EXPECT_THROW(decode(s, 1, 8), std::invalid_argument);
  EXPECT_THROW(decode(s, 2, 9), std::invalid_argument);   // odd y2
  EXPECT_THROW(decode(s, 3, 1), std::invalid_argument);   // 1 not in A3
  EXPECT_THROW(decode(s, 4, 0), std::invalid_argument);
}

TEST(Decode, MatchesParityRules) {
  const int levels = 3;
  const LevelScheme s = LevelScheme::default_scheme(levels);
  const SchemeValidation tables = validate_scheme(s);
  for (std::int64_t y = 0; y < 512; ++y) {
    for (int r : {1, 3}) {
      std::vector<std::int64_t> got;
      try {
        got = decode(s, tables, r, y);
      } catch (const std::invalid_argument&) {
        continue;  // outputs the channel never produces
      }
      EXPECT_EQ(got, parity_decode(r, y, levels)) << "r=" << r << " y=" << y;
    }
  }
  for (std::int64_t y = 0; y < 1024; y += 2) {
    std::vector<std::int64_t> got;
    try {
      got = decode(s, tables, 2, y);
    } catch (const std::invalid_argument&) {
      continue;
    }
    EXPECT_EQ(got, parity_decode(2, y, levels)) << y;
  }
}

TEST(Decode, PerLevelIndependence) {
  // changing one level of the message moves exactly that digit of each output
  const LevelScheme s = LevelScheme::default_scheme(3);
  const MessageTuple base = tuple({1, 0, 1}, {2, 4, 0}, {0, 2, 2});
  const MessageTuple moved = tuple({1, 1, 1}, {2, 0, 0}, {0, 0, 2});
  for (int r = 1; r <= 3; ++r) {
    const auto a = decode(s, r, transmit(s, encode(s, base))[static_cast<std::size_t>(r - 1)]);
    const auto b = decode(s, r, transmit(s, encode(s, moved))[static_cast<std::size_t>(r - 1)]);
    EXPECT_EQ(a[0], b[0]);
    EXPECT_EQ(a[2], b[2]);
  }
}

TEST(Exhaustive, DefaultSchemeZeroError) {
  for (int l = 1; l <= 4; ++l) {
    const ZeroErrorReport rep = exhaustive_zero_error(LevelScheme::default_scheme(), l);
    EXPECT_TRUE(rep.zero_error) << rep.failure;
    EXPECT_EQ(rep.tuples_checked, static_cast<std::uint64_t>(std::pow(12, l)));
  }
}

TEST(Exhaustive, BrokenSchemeHasCounterexample) {
  LevelScheme s = LevelScheme::default_scheme();
  s.alphabets[1] = {0, 1, 2};
  const ZeroErrorReport rep = exhaustive_zero_error(s, 1);
  EXPECT_FALSE(rep.zero_error);
  ASSERT_TRUE(rep.counterexample.has_value());
  const auto y = transmit(s, encode(s, *rep.counterexample));
  bool mismatch = false;
  for (int r = 1; r <= 3 && !mismatch; ++r) {
    try {
      mismatch = decode(s, r, y[static_cast<std::size_t>(r - 1)]) != rep.counterexample->digits[r - 1];
    } catch (const std::invalid_argument&) {
      mismatch = true;
    }
  }
  EXPECT_TRUE(mismatch);
}

TEST(Exhaustive, Guard) {
  EXPECT_THROW(exhaustive_zero_error(LevelScheme::default_scheme(), 7), std::length_error);  // 12^7 > 1e7
}

TEST(Rates, DefaultScheme) {
  const LevelScheme s = LevelScheme::default_scheme(4);
  EXPECT_NEAR(scheme_dof(s), (2 + std::log2(3.0)) / 3, 1e-12);
  EXPECT_NEAR(scheme_dof(s), 1.19499, 1e-5);
  EXPECT_NEAR(std::log2(double(s.alphabets[0].size())), 1, 1e-15);
  EXPECT_NEAR(std::log2(double(s.alphabets[1].size())), std::log2(3.0), 1e-15);
  EXPECT_NEAR(std::log2(double(s.alphabets[2].size())), 1, 1e-15);
  const LevelScheme binary{{{{0, 1}, {0, 1}, {0, 1}}}, 4, 1, CanonicalTriple{1, 1}};
  EXPECT_NEAR(scheme_dof(binary), 1.5, 1e-15);
}

TEST(Rates, PowerAccounting) {
  const int levels = 3;
  const LevelScheme s = LevelScheme::default_scheme(levels);
  const MessageTuple top = tuple({1, 1, 1}, {4, 4, 4}, {2, 2, 2});
  const auto x = encode(s, top);
  const double limit = std::pow(8.0, 2 * levels);
  for (auto xi : x) EXPECT_LT(static_cast<double>(xi) * static_cast<double>(xi), limit);
}

TEST(Search, FindsValidSchemes) {
  const AlphabetSearchResult r = search_alphabets(CanonicalTriple{2, 1}, 8);
  ASSERT_TRUE(r.best.has_value());
  EXPECT_TRUE(validate_scheme(*r.best).valid);
  EXPECT_GE(r.best_dof + 1e-12, scheme_dof(LevelScheme::default_scheme()));
  EXPECT_TRUE(exhaustive_zero_error(*r.best, 2).zero_error);

  const AlphabetSearchResult wide = search_alphabets(CanonicalTriple{2, 1}, 10);
  ASSERT_TRUE(wide.best.has_value());
  EXPECT_TRUE(exhaustive_zero_error(*wide.best, 2).zero_error);
  EXPECT_GE(wide.best_dof, r.best_dof);
  EXPECT_THROW(search_alphabets(CanonicalTriple{2, 1}, 11), std::invalid_argument);
}

TEST(Search, SearchResultIsExhaustiveOptimumForSmallBase) {
  // compare with a direct scan through validate_scheme for Q <= 5
  const AlphabetSearchResult r = search_alphabets(CanonicalTriple{1, 1}, 5);
  double best = -1;
  for (std::int64_t q = 2; q <= 5; ++q) {
    const std::uint32_t subsets = 1u << (q - 1);
    for (std::uint32_t m1 = 0; m1 < subsets; ++m1) {
      for (std::uint32_t m2 = 0; m2 < subsets; ++m2) {
        for (std::uint32_t m3 = 0; m3 < subsets; ++m3) {
          LevelScheme s{{}, q, 1, CanonicalTriple{1, 1}};
          const std::array<std::uint32_t, 3> masks{m1, m2, m3};
          for (std::size_t i = 0; i < 3; ++i) {
            s.alphabets[i].push_back(0);
            for (std::int64_t d = 1; d < q; ++d) {
              if (masks[i] >> (d - 1) & 1u) s.alphabets[i].push_back(d);
            }
          }
          if (validate_scheme(s).valid) best = std::max(best, scheme_dof(s));
        }
      }
    }
  }
  EXPECT_NEAR(r.best_dof, best, 1e-12);
}

TEST(SchemeFile, ReadsAndRejects) {
  std::istringstream good("# default\nA1 0 1\nA2 0 2 4\nA3 0 2\nQ 8\np 2\nq 1\n");
  EXPECT_EQ(read_scheme(good, 3), LevelScheme::default_scheme(3));
  std::istringstream unknown("A1 0 1\nA2 0\nA3 0\nQ 8\np 2\nq 1\nR 3\n");
  try {
    read_scheme(unknown, 1);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 7"), std::string::npos);
  }
  std::istringstream missing("A1 0 1\nA2 0\n");
  EXPECT_THROW(read_scheme(missing, 1), std::invalid_argument);
  std::istringstream junk("A1 0 x\n");
  EXPECT_THROW(read_scheme(junk, 1), std::invalid_argument);
}

}  // namespace
}  // namespace dofkit
