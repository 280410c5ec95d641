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

#include "dofkit/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace dofkit {
namespace {

constexpr std::string_view kRadical = "√";

std::int64_t to_int64(std::string_view s, std::string_view token) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("malformed integer '" + std::string(s) + "' in '" + std::string(token) + "'");
  }
  return v;
}

QuadraticIrrational parse_quadratic(std::string_view token) {
  const auto close = token.find(')');
  if (close == std::string_view::npos) throw std::invalid_argument("missing ')' in '" + std::string(token) + "'");
  std::string_view inner = token.substr(1, close - 1);
  std::string_view tail = token.substr(close + 1);

  std::int64_t r = 1;
  if (!tail.empty()) {
    if (tail.front() != '/') throw std::invalid_argument("expected '/r' after ')' in '" + std::string(token) + "'");
    r = to_int64(tail.substr(1), token);
  }

  std::size_t radical = inner.find(kRadical);
  std::size_t radical_len = kRadical.size();
  if (radical == std::string_view::npos) {
    radical = inner.find("sqrt");
    radical_len = 4;
  }
  if (radical == std::string_view::npos) throw std::invalid_argument("missing √ in '" + std::string(token) + "'");
  const std::int64_t d = to_int64(inner.substr(radical + radical_len), token);

  // split "a±b" at the last sign that is not the leading one
  std::string_view head = inner.substr(0, radical);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if (head[i] == '+' || head[i] == '-') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) throw std::invalid_argument("expected 'a+b√d' in '" + std::string(token) + "'");
  const std::int64_t a = to_int64(head.substr(0, split), token);
  std::string_view b_text = head.substr(split + 1);
  std::int64_t b = b_text.empty() ? 1 : to_int64(b_text, token);
  if (head[split] == '-') b = -b;
  return QuadraticIrrational(a, b, r, d);
}

}  // namespace

Gain parse_gain(std::string_view token) {
  if (token.empty()) throw std::invalid_argument("empty gain entry");
  if (token.front() == '(') return parse_quadratic(token);
  return parse_rational(token);
}

GainMatrix read_gain_matrix(std::istream& in) {
  std::vector<std::pair<int, std::string>> tokens;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string word;
    while (words >> word) tokens.emplace_back(line_no, word);
  }
  if (tokens.empty()) throw MatrixParseError(line_no, "empty matrix file");

  std::size_t k = 0;
  try {
    const auto v = to_int64(tokens[0].second, tokens[0].second);
    if (v < 2) throw std::invalid_argument("user count must be >= 2, got " + tokens[0].second);
    k = static_cast<std::size_t>(v);
  } catch (const std::invalid_argument& e) {
    throw MatrixParseError(tokens[0].first, e.what());
  }
  if (tokens.size() != 1 + k * k) {
    throw MatrixParseError(tokens.back().first, "expected " + std::to_string(k * k) + " entries for K=" +
                                                    std::to_string(k) + ", found " +
                                                    std::to_string(tokens.size() - 1));
  }
  std::vector<std::vector<Gain>> rows(k);
  for (std::size_t idx = 0; idx < k * k; ++idx) {
    const auto& [where, text] = tokens[idx + 1];
    try {
      rows[idx / k].push_back(parse_gain(text));
    } catch (const std::invalid_argument& e) {
      throw MatrixParseError(where, e.what());
    }
  }
  return GainMatrix(std::move(rows));
}

GainMatrix read_gain_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file '" + path.string() + "'");
  return read_gain_matrix(in);
}

void write_gain_matrix(std::ostream& out, const GainMatrix& h) {
  out << h.k() << '\n';
  for (std::size_t i = 0; i < h.k(); ++i) {
    for (std::size_t j = 0; j < h.k(); ++j) out << (j ? " " : "") << to_string(h.at(i, j));
    out << '\n';
  }
}

std::string format_gain_matrix(const GainMatrix& h) {
  std::ostringstream out;
  write_gain_matrix(out, h);
  return out.str();
}

}  // namespace dofkit
