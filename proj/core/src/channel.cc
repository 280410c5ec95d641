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

#include "dofkit/channel.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "dofkit/random.hpp"

namespace dofkit {

NoiseSpec::NoiseSpec(std::vector<double> variances, std::uint64_t seed)
    : variances_(std::move(variances)), seed_(seed) {
  for (double v : variances_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("noise variances must be positive and finite");
  }
}

double NoiseSpec::sample(std::size_t receiver, std::uint64_t t) const {
  SplitMix64 rng(derive_seed(derive_seed(seed_, receiver), t));
  std::normal_distribution<double> normal(0.0, std::sqrt(variances_.at(receiver)));
  return normal(rng);
}

SignalBlock apply_channel(const GainMatrix& h, const SignalBlock& x, const std::optional<NoiseSpec>& noise) {
  if (x.users != h.k()) {
    throw std::invalid_argument("signal block has " + std::to_string(x.users) + " users, channel has " +
                                std::to_string(h.k()));
  }
  if (noise && noise->variances().size() != h.k()) {
    throw std::invalid_argument("noise spec has " + std::to_string(noise->variances().size()) + " receivers");
  }
  SignalBlock y(h.k(), x.length);
  for (std::size_t rx = 0; rx < h.k(); ++rx) {
    for (std::size_t t = 0; t < x.length; ++t) {
      double acc = 0.0;
      for (std::size_t tx = 0; tx < h.k(); ++tx) acc += x(tx, t) * h.numeric(tx, rx);
      if (noise) acc += noise->sample(rx, t);
      y(rx, t) = acc;
    }
  }
  return y;
}

IntegerBlock apply_integer_channel(const GainMatrix& h, const IntegerBlock& x) {
  if (x.users != h.k()) {
    throw std::invalid_argument("signal block has " + std::to_string(x.users) + " users, channel has " +
                                std::to_string(h.k()));
  }
  if (!h.all_integer()) throw std::invalid_argument("integer channel needs integer gains");
  IntegerBlock y(h.k(), x.length);
  for (std::size_t rx = 0; rx < h.k(); ++rx) {
    for (std::size_t t = 0; t < x.length; ++t) {
      BigInt acc = 0;
      for (std::size_t tx = 0; tx < h.k(); ++tx) acc += numerator(h.rational_at(tx, rx)) * x(tx, t);
      if (acc > std::numeric_limits<std::int64_t>::max() || acc < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("integer channel output exceeds 64 bits");
      }
      y(rx, t) = acc.convert_to<std::int64_t>();
    }
  }
  return y;
}

}  // namespace dofkit
