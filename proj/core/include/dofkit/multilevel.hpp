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

#ifndef DOFKIT_MULTILEVEL_HPP_
#define DOFKIT_MULTILEVEL_HPP_

// Deterministic multi-level alignment code for the 3-user integer channel
//   y1 = x1 + x2 + x3,   y2 = p x2 + q x3,   y3 = x3.
// Each user sends L base-Q digits drawn from its own alphabet; the
// alphabets are chosen so no level carries into the next at any receiver.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dofkit/gain_matrix.hpp"

namespace dofkit {

struct LevelScheme {
  std::array<std::vector<std::int64_t>, 3> alphabets;
  std::int64_t base = 2;
  int levels = 1;
  CanonicalTriple gains;

  /// A1 = {0,1}, A2 = {0,2,4}, A3 = {0,2}, Q = 8, (p, q) = (2, 1).
  static LevelScheme default_scheme(int levels = 1);
  LevelScheme with_levels(int l) const;

  friend bool operator==(const LevelScheme&, const LevelScheme&) = default;
};

/// digits[i][l] in alphabets[i]; level l = 0 is the least significant.
struct MessageTuple {
  std::array<std::vector<std::int64_t>, 3> digits;
  friend bool operator==(const MessageTuple&, const MessageTuple&) = default;
};

struct SchemeValidation {
  bool valid = false;
  std::vector<std::string> diagnostics;
  /// Per-level inverse maps: w1 -> m1 at receiver 1, w2 -> m2 at receiver 2.
  /// Built first-writer-wins so that invalid schemes still decode (wrongly).
  std::map<std::int64_t, std::int64_t> receiver1_table;
  std::map<std::int64_t, std::int64_t> receiver2_table;
};

SchemeValidation validate_scheme(const LevelScheme& s);

/// x_i = sum_l m_{i,l} Q^l. Throws std::invalid_argument on digits outside
/// the alphabets or a wrong level count.
std::array<std::int64_t, 3> encode(const LevelScheme& s, const MessageTuple& m);

/// Noiseless channel outputs (y1, y2, y3).
std::array<std::int64_t, 3> transmit(const LevelScheme& s, const std::array<std::int64_t, 3>& x);

/// Recovers the L digits of user `receiver` (1, 2 or 3) from its output.
/// Throws std::invalid_argument when y is out of range, when p does not
/// divide y2, or when a digit has no preimage.
std::vector<std::int64_t> decode(const LevelScheme& s, int receiver, std::int64_t y);
std::vector<std::int64_t> decode(const LevelScheme& s, const SchemeValidation& tables, int receiver, std::int64_t y);

struct ZeroErrorReport {
  bool zero_error = false;
  std::uint64_t tuples_checked = 0;
  std::optional<MessageTuple> counterexample;
  std::string failure;
};

inline constexpr std::uint64_t kMaxExhaustiveTuples = 10'000'000;

/// Checks decode(encode(m)) == m for every message tuple at `levels`
/// levels. Throws std::length_error if the tuple count exceeds
/// kMaxExhaustiveTuples.
ZeroErrorReport exhaustive_zero_error(const LevelScheme& s, int levels);

/// sum_i log2|A_i| / log2 Q: the sum rate is L sum_i log2|A_i| while
/// (1/2) log2 P = L log2 Q.
double scheme_dof(const LevelScheme& s);

struct AlphabetSearchResult {
  std::optional<LevelScheme> best;
  double best_dof = 0;
  std::uint64_t candidates = 0;
};

/// Brute force over Q in [2, max_base] and alphabets that are subsets of
/// [0, Q-1] containing 0 (a shift-normal form). Returns the valid scheme
/// with the largest scheme_dof; ties keep the smaller Q, then the
/// lexicographically first alphabets. max_base is capped at 10.
AlphabetSearchResult search_alphabets(CanonicalTriple gains, std::int64_t max_base);

/// Scheme file: whitespace-separated "key values..." lines,
///   A1 0 1
///   A2 0 2 4
///   A3 0 2
///   Q 8
///   p 2
///   q 1
/// with '#' comments. The level count comes from the caller.
LevelScheme read_scheme(std::istream& in, int levels);
LevelScheme read_scheme(const std::filesystem::path& path, int levels);

}  // namespace dofkit

#endif  // DOFKIT_MULTILEVEL_HPP_
