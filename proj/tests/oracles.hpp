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


// Brute-force reference implementations used to cross-check the library.
// These deliberately take the slow, obvious route.

#ifndef DOFKIT_TESTS_ORACLES_HPP_
#define DOFKIT_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "dofkit/sumset.hpp"

namespace oracle {

// Smallest distance between distinct points spacing * (alpha x + s),
// |x| <= max_x, |s| <= max_s, by sorting the whole constellation.
inline long double min_gap(long double alpha, long double spacing, std::int64_t max_x, std::int64_t max_s) {
  std::vector<long double> pts;
  for (std::int64_t x = -max_x; x <= max_x; ++x) {
    for (std::int64_t s = -max_s; s <= max_s; ++s) pts.push_back(spacing * (alpha * x + s));
  }
  std::sort(pts.begin(), pts.end());
  long double best = INFINITY;
  for (std::size_t i = 1; i < pts.size(); ++i) best = std::min(best, pts[i] - pts[i - 1]);
  return best;
}

// min over 1 <= q <= max_q of q^2 |alpha - p/q| with p the nearest integers.
inline long double liouville_min(long double alpha, std::int64_t max_q) {
  long double best = INFINITY;
  for (std::int64_t q = 1; q <= max_q; ++q) {
    const long double qa = alpha * q;
    for (long double p : {std::floor(qa), std::ceil(qa)}) {
      best = std::min(best, static_cast<long double>(q) * std::fabs(qa - p));
    }
  }
  return best;
}

inline std::set<std::vector<std::int64_t>> sumset(const dofkit::IntVectorSet& a, const dofkit::IntVectorSet& b,
                                                  std::int64_t p = 1, std::int64_t q = 1) {
  std::set<std::vector<std::int64_t>> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      std::vector<std::int64_t> s(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) s[i] = p * x[i] + q * y[i];
      out.insert(s);
    }
  }
  return out;
}

// H(X + Y) from the full joint distribution of independent uniforms.
inline long double entropy_of_sum(const dofkit::IntVectorSet& a, const dofkit::IntVectorSet& b) {
  std::map<std::vector<std::int64_t>, long double> mass;
  const long double w = 1.0L / (static_cast<long double>(a.size()) * static_cast<long double>(b.size()));
  for (const auto& x : a) {
    for (const auto& y : b) {
      std::vector<std::int64_t> s(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
      mass[s] += w;
    }
  }
  long double h = 0;
  for (const auto& [s, m] : mass) h -= m * std::log2(m);
  return h;
}

}  // namespace oracle

#endif  // DOFKIT_TESTS_ORACLES_HPP_
