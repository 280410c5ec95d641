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

#ifndef DOFKIT_MATRIX_IO_HPP_
#define DOFKIT_MATRIX_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dofkit/gain_matrix.hpp"

namespace dofkit {

// Gain matrix text format:
//
//   # comments run to end of line
//   3
//   (0+1√2)/1  1/1        1/1
//   1/1        (1+1√5)/2  1/1
//   1          1          (0+1√3)/1
//
// K first, then K*K whitespace-separated entries in row (transmitter)
// order. An entry is "n", "n/d" or "(a±b√D)/r"; "sqrt" is accepted in
// place of "√" and "/r" may be omitted when r = 1.

class MatrixParseError : public std::runtime_error {
 public:
  MatrixParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

Gain parse_gain(std::string_view token);
GainMatrix read_gain_matrix(std::istream& in);
GainMatrix read_gain_matrix(const std::filesystem::path& path);

/// Lossless writer; rationals are always written "n/d".
void write_gain_matrix(std::ostream& out, const GainMatrix& h);
std::string format_gain_matrix(const GainMatrix& h);

}  // namespace dofkit

#endif  // DOFKIT_MATRIX_IO_HPP_
