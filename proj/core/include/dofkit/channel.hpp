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

#ifndef DOFKIT_CHANNEL_HPP_
#define DOFKIT_CHANNEL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dofkit/gain_matrix.hpp"

namespace dofkit {

/// Per-receiver Gaussian noise. Sample z_{j,t} is a pure function of
/// (seed, j, t).
class NoiseSpec {
 public:
  /// Throws std::invalid_argument if any variance is not > 0.
  NoiseSpec(std::vector<double> variances, std::uint64_t seed);
  static NoiseSpec unit(std::size_t k, std::uint64_t seed) { return NoiseSpec(std::vector<double>(k, 1.0), seed); }

  const std::vector<double>& variances() const { return variances_; }
  std::uint64_t seed() const { return seed_; }

  /// z_{receiver, t}.
  double sample(std::size_t receiver, std::uint64_t t) const;

 private:
  std::vector<double> variances_;
  std::uint64_t seed_;
};

/// K x n block of real symbols, row-major by user.
template <typename T>
struct Block {
  std::size_t users = 0;
  std::size_t length = 0;
  std::vector<T> data;

  Block() = default;
  Block(std::size_t k, std::size_t n) : users(k), length(n), data(k * n, T{}) {}
  T& operator()(std::size_t user, std::size_t t) { return data[user * length + t]; }
  const T& operator()(std::size_t user, std::size_t t) const { return data[user * length + t]; }
  friend bool operator==(const Block&, const Block&) = default;
};

using SignalBlock = Block<double>;
using IntegerBlock = Block<std::int64_t>;

/// y_{j,t} = sum_i x_{i,t} h(i, j) + z_{j,t}. Throws std::invalid_argument
/// on dimension mismatch.
SignalBlock apply_channel(const GainMatrix& h, const SignalBlock& x, const std::optional<NoiseSpec>& noise);

/// Noiseless channel on integer inputs with integer gains, computed exactly.
IntegerBlock apply_integer_channel(const GainMatrix& h, const IntegerBlock& x);

}  // namespace dofkit

#endif  // DOFKIT_CHANNEL_HPP_
