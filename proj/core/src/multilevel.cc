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

#include "dofkit/multilevel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dofkit {
namespace {

// Q^levels, or nullopt on int64 overflow.
std::optional<std::int64_t> checked_power(std::int64_t base, int levels) {
  std::int64_t out = 1;
  for (int l = 0; l < levels; ++l) {
    if (out > std::numeric_limits<std::int64_t>::max() / base) return std::nullopt;
    out *= base;
  }
  return out;
}

std::int64_t level_range(const LevelScheme& s) {
  if (s.base < 2) throw std::invalid_argument("base Q must be >= 2");
  if (s.levels < 1) throw std::invalid_argument("level count must be >= 1");
  auto range = checked_power(s.base, s.levels);
  if (!range) throw std::invalid_argument("Q^L overflows 64-bit integers");
  return *range;
}

std::string set_string(const std::vector<std::int64_t>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "}";
}

std::vector<std::int64_t> base_digits(std::int64_t v, std::int64_t base, int levels) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(levels));
  for (auto& d : out) {
    d = v % base;
    v /= base;
  }
  return out;
}

}  // namespace

LevelScheme LevelScheme::default_scheme(int levels) {
  return LevelScheme{{{{0, 1}, {0, 2, 4}, {0, 2}}}, 8, levels, CanonicalTriple{2, 1}};
}

LevelScheme LevelScheme::with_levels(int l) const {
  LevelScheme out = *this;
  out.levels = l;
  return out;
}

SchemeValidation validate_scheme(const LevelScheme& s) {
  SchemeValidation v;
  auto fail = [&](std::string msg) { v.diagnostics.push_back(std::move(msg)); };
  const std::int64_t q_base = s.base;
  const std::int64_t p = s.gains.p;
  const std::int64_t q = s.gains.q;

  if (q_base < 2) fail("base Q must be >= 2");
  if (s.levels < 1) fail("level count must be >= 1");
  if (p == 0 || q == 0) fail("gains p and q must be nonzero");
  if (q_base >= 2 && s.levels >= 1 && !checked_power(q_base, s.levels)) fail("Q^L overflows 64-bit integers");
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& a = s.alphabets[i];
    const std::string name = "A" + std::to_string(i + 1);
    if (a.empty()) fail(name + " is empty");
    if (std::set<std::int64_t>(a.begin(), a.end()).size() != a.size()) fail(name + " has repeated digits");
    for (auto d : a) {
      if (d < 0) fail(name + " has negative digit " + std::to_string(d));
    }
  }
  if (!v.diagnostics.empty()) return v;

  const auto& [a1, a2, a3] = s.alphabets;
  for (auto d : a3) {
    if (d >= q_base) fail("receiver 3: digit " + std::to_string(d) + " of A3 exceeds Q-1");
  }

  for (auto m1 : a1) {
    for (auto m2 : a2) {
      for (auto m3 : a3) {
        const std::int64_t w1 = m1 + m2 + m3;
        if (w1 < 0 || w1 >= q_base) {
          fail("receiver 1: level sum " + std::to_string(m1) + "+" + std::to_string(m2) + "+" + std::to_string(m3) +
               "=" + std::to_string(w1) + " carries out of [0, Q-1]");
        }
        auto [it, inserted] = v.receiver1_table.emplace(w1, m1);
        if (!inserted && it->second != m1) {
          fail("receiver 1: w1=" + std::to_string(w1) + " does not determine m1 (" + std::to_string(it->second) +
               " vs " + std::to_string(m1) + ")");
        }
      }
    }
  }

  for (auto m2 : a2) {
    for (auto m3 : a3) {
      const std::int64_t num = p * m2 + q * m3;
      if (num % p != 0) {
        fail("receiver 2: p=" + std::to_string(p) + " does not divide q*m3=" + std::to_string(q * m3));
        continue;
      }
      const std::int64_t w2 = num / p;
      if (w2 < 0 || w2 >= q_base) {
        fail("receiver 2: level value " + std::to_string(w2) + " carries out of [0, Q-1]");
      }
      auto [it, inserted] = v.receiver2_table.emplace(w2, m2);
      if (!inserted && it->second != m2) {
        fail("receiver 2: w2=" + std::to_string(w2) + " does not determine m2 (" + std::to_string(it->second) +
             " vs " + std::to_string(m2) + ")");
      }
    }
  }

  v.valid = v.diagnostics.empty();
  return v;
}

std::array<std::int64_t, 3> encode(const LevelScheme& s, const MessageTuple& m) {
  level_range(s);
  std::array<std::int64_t, 3> x{};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& digits = m.digits[i];
    if (digits.size() != static_cast<std::size_t>(s.levels)) {
      throw std::invalid_argument("user " + std::to_string(i + 1) + " has " + std::to_string(digits.size()) +
                                  " digits, scheme has " + std::to_string(s.levels) + " levels");
    }
    const auto& alphabet = s.alphabets[i];
    std::int64_t scale = 1;
    for (std::size_t l = 0; l < digits.size(); ++l) {
      if (std::find(alphabet.begin(), alphabet.end(), digits[l]) == alphabet.end()) {
        throw std::invalid_argument("digit " + std::to_string(digits[l]) + " of user " + std::to_string(i + 1) +
                                    " is not in A" + std::to_string(i + 1) + "=" + set_string(alphabet));
      }
      x[i] += digits[l] * scale;
      if (l + 1 < digits.size()) scale *= s.base;
    }
  }
  return x;
}

std::array<std::int64_t, 3> transmit(const LevelScheme& s, const std::array<std::int64_t, 3>& x) {
  return {x[0] + x[1] + x[2], s.gains.p * x[1] + s.gains.q * x[2], x[2]};
}

std::vector<std::int64_t> decode(const LevelScheme& s, int receiver, std::int64_t y) {
  return decode(s, validate_scheme(s), receiver, y);
}

std::vector<std::int64_t> decode(const LevelScheme& s, const SchemeValidation& tables, int receiver, std::int64_t y) {
  const std::int64_t range = level_range(s);
  if (receiver < 1 || receiver > 3) throw std::invalid_argument("receiver must be 1, 2 or 3");
  std::int64_t value = y;
  if (receiver == 2) {
    if (y % s.gains.p != 0) {
      throw std::invalid_argument("receiver 2: y2=" + std::to_string(y) + " is not divisible by p=" +
                                  std::to_string(s.gains.p));
    }
    value = y / s.gains.p;
  }
  if (value < 0 || value >= range) {
    throw std::invalid_argument("receiver " + std::to_string(receiver) + ": output " + std::to_string(y) +
                                " outside [0, Q^L)");
  }
  std::vector<std::int64_t> digits = base_digits(value, s.base, s.levels);
  for (auto& w : digits) {
    if (receiver == 3) {
      const auto& a3 = s.alphabets[2];
      if (std::find(a3.begin(), a3.end(), w) == a3.end()) {
        throw std::invalid_argument("receiver 3: digit " + std::to_string(w) + " not in A3");
      }
      continue;
    }
    const auto& table = receiver == 1 ? tables.receiver1_table : tables.receiver2_table;
    auto it = table.find(w);
    if (it == table.end()) {
      throw std::invalid_argument("receiver " + std::to_string(receiver) + ": level value " + std::to_string(w) +
                                  " has no preimage");
    }
    w = it->second;
  }
  return digits;
}

ZeroErrorReport exhaustive_zero_error(const LevelScheme& scheme, int levels) {
  const LevelScheme s = scheme.with_levels(levels);
  level_range(s);
  const auto& [a1, a2, a3] = s.alphabets;
  std::vector<std::array<std::int64_t, 3>> combos;
  for (auto m1 : a1) {
    for (auto m2 : a2) {
      for (auto m3 : a3) combos.push_back({m1, m2, m3});
    }
  }
  if (combos.empty()) throw std::invalid_argument("empty alphabet");

  std::uint64_t total = 1;
  for (int l = 0; l < levels; ++l) {
    if (total > kMaxExhaustiveTuples / combos.size()) {
      throw std::length_error("exhaustive check exceeds " + std::to_string(kMaxExhaustiveTuples) + " tuples");
    }
    total *= combos.size();
  }

  const SchemeValidation tables = validate_scheme(s);
  ZeroErrorReport report;
  std::vector<std::size_t> counter(static_cast<std::size_t>(levels), 0);
  MessageTuple m;
  for (auto& d : m.digits) d.assign(static_cast<std::size_t>(levels), 0);

  for (std::uint64_t n = 0; n < total; ++n) {
    for (std::size_t l = 0; l < counter.size(); ++l) {
      for (std::size_t i = 0; i < 3; ++i) m.digits[i][l] = combos[counter[l]][i];
    }
    ++report.tuples_checked;
    try {
      const auto y = transmit(s, encode(s, m));
      for (int r = 1; r <= 3; ++r) {
        if (decode(s, tables, r, y[static_cast<std::size_t>(r - 1)]) != m.digits[static_cast<std::size_t>(r - 1)]) {
          report.failure = "receiver " + std::to_string(r) + " decoded the wrong message";
          report.counterexample = m;
          return report;
        }
      }
    } catch (const std::invalid_argument& e) {
      report.failure = e.what();
      report.counterexample = m;
      return report;
    }
    for (std::size_t l = 0; l < counter.size(); ++l) {
      if (++counter[l] < combos.size()) break;
      counter[l] = 0;
    }
  }
  report.zero_error = true;
  return report;
}

double scheme_dof(const LevelScheme& s) {
  double bits = 0.0;
  for (const auto& a : s.alphabets) bits += std::log2(static_cast<double>(a.size()));
  return bits / std::log2(static_cast<double>(s.base));
}

AlphabetSearchResult search_alphabets(CanonicalTriple gains, std::int64_t max_base) {
  if (max_base < 2 || max_base > 10) throw std::invalid_argument("max_base must lie in [2, 10]");
  if (gains.p == 0 || gains.q == 0) throw std::invalid_argument("gains p and q must be nonzero");
  AlphabetSearchResult result;

  for (std::int64_t base = 2; base <= max_base; ++base) {
    // subsets of [0, Q-1] containing 0, as bitmasks
    std::vector<std::uint32_t> masks;
    for (std::uint32_t rest = 0; rest < (1U << (base - 1)); ++rest) masks.push_back((rest << 1) | 1U);
    auto members = [](std::uint32_t mask) {
      std::vector<std::int64_t> out;
      for (std::int64_t d = 0; mask; ++d, mask >>= 1) {
        if (mask & 1U) out.push_back(d);
      }
      return out;
    };
    const double log_base = std::log2(static_cast<double>(base));

    for (auto m2 : masks) {
      const auto a2 = members(m2);
      for (auto m3 : masks) {
        const auto a3 = members(m3);
        // receiver 2: w2 = m2 + q m3 / p must be integral, in range and determine m2
        bool ok = true;
        std::map<std::int64_t, std::int64_t> table;
        std::uint64_t sum23 = 0;
        for (auto d2 : a2) {
          for (auto d3 : a3) {
            sum23 |= 1ULL << (d2 + d3);
            const std::int64_t num = gains.p * d2 + gains.q * d3;
            if (num % gains.p != 0) ok = false;
            const std::int64_t w2 = num / gains.p;
            if (w2 < 0 || w2 >= base) ok = false;
            auto [it, inserted] = table.emplace(w2, d2);
            if (!inserted && it->second != d2) ok = false;
          }
        }
        if (!ok) continue;
        const double bits23 = std::log2(static_cast<double>(a2.size() * a3.size()));
        for (auto m1 : masks) {
          const int size1 = std::popcount(m1);
          const double dof = (std::log2(static_cast<double>(size1)) + bits23) / log_base;
          ++result.candidates;
          if (result.best && dof <= result.best_dof + 1e-12) continue;
          // receiver 1: translates d1 + (A2 + A3) pairwise disjoint and below Q
          std::uint64_t used = 0;
          bool valid = true;
          for (std::int64_t d1 = 0; d1 < base && valid; ++d1) {
            if (!(m1 >> d1 & 1U)) continue;
            const std::uint64_t shifted = sum23 << d1;
            if ((shifted & used) || (shifted >> base)) valid = false;
            used |= shifted;
          }
          if (!valid) continue;
          result.best = LevelScheme{{members(m1), a2, a3}, base, 1, gains};
          result.best_dof = dof;
        }
      }
    }
  }
  if (result.best && !validate_scheme(*result.best).valid) {
    throw std::logic_error("alphabet search produced a scheme that fails validation");
  }
  return result;
}

LevelScheme read_scheme(std::istream& in, int levels) {
  LevelScheme s;
  s.levels = levels;
  std::array<bool, 6> seen{};
  std::string line;
  int line_no = 0;
  std::int64_t p = 0, q = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string key;
    if (!(words >> key)) continue;
    std::vector<std::int64_t> values;
    std::string word;
    while (words >> word) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoll(word, &used));
        if (used != word.size()) throw std::invalid_argument(word);
      } catch (const std::exception&) {
        throw std::invalid_argument("scheme line " + std::to_string(line_no) + ": '" + word + "' is not an integer");
      }
    }
    auto single = [&]() {
      if (values.size() != 1) {
        throw std::invalid_argument("scheme line " + std::to_string(line_no) + ": '" + key + "' takes one value");
      }
      return values[0];
    };
    if (key == "A1" || key == "A2" || key == "A3") {
      const auto idx = static_cast<std::size_t>(key[1] - '1');
      s.alphabets[idx] = values;
      seen[idx] = true;
    } else if (key == "Q") {
      s.base = single();
      seen[3] = true;
    } else if (key == "p") {
      p = single();
      seen[4] = true;
    } else if (key == "q") {
      q = single();
      seen[5] = true;
    } else {
      throw std::invalid_argument("scheme line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  static constexpr std::array<const char*, 6> kNames{"A1", "A2", "A3", "Q", "p", "q"};
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw std::invalid_argument(std::string("scheme file is missing '") + kNames[i] + "'");
  }
  s.gains = CanonicalTriple::make(p, q);
  for (auto& a : s.alphabets) std::sort(a.begin(), a.end());
  return s;
}

LevelScheme read_scheme(const std::filesystem::path& path, int levels) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scheme file '" + path.string() + "'");
  return read_scheme(in, levels);
}

}  // namespace dofkit
