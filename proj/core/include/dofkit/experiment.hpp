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


#ifndef DOFKIT_EXPERIMENT_HPP_
#define DOFKIT_EXPERIMENT_HPP_

// Command-line experiment plumbing: configuration (flags over an optional
// key=value file), the five subcommands, and CSV / JSON emission.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dofkit/exact.hpp"

namespace dofkit {

/// Exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { kLatticeSim, kSumsetVerify, kMultilevel, kBounds, kSweep };
enum class OutputFormat { kAuto, kCsv, kJson };
enum class SumsetLemma { kCover, kPlunnecke, kSetsum, kExg, kBsg };

std::string to_string(Command c);
std::string to_string(OutputFormat f);
std::string to_string(SumsetLemma l);

struct ExperimentConfig {
  Command command = Command::kLatticeSim;
  std::optional<std::filesystem::path> matrix_path;
  std::uint64_t seed = 1;
  std::vector<double> power_grid{1e6, 1e9, 1e12};
  double epsilon = 0.2;
  std::uint64_t trials = 1000;
  std::filesystem::path output_path;  // empty: standard output
  OutputFormat format = OutputFormat::kAuto;
  std::optional<std::int64_t> s_range;  // nullopt: auto
  unsigned threads = 1;
  // sumset verify
  SumsetLemma lemma = SumsetLemma::kCover;
  std::size_t max_card = 40;
  std::int64_t coord_range = 50;
  std::size_t dim = 1;
  double c = 2.0;
  // multilevel
  int levels = 1;
  std::string scheme = "default";
  bool exhaustive = false;
  std::int64_t search_base = 0;  // 0: no alphabet search
  // bounds
  std::optional<std::array<std::size_t, 3>> triple;  // 1-based
  bool timestamp = false;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses `args` (without the program name): a subcommand ("lattice-sim",
/// "sumset verify", "multilevel", "bounds", "sweep") followed by flags.
/// `--config <file>` loads key=value lines first; flags override them.
/// Throws UsageError with a line-precise message on bad input.
ExperimentConfig parse_config(const std::vector<std::string>& args);

/// key=value file body; keys are the long flag names without dashes.
ExperimentConfig parse_config_text(std::istream& in, ExperimentConfig base = {});

/// Every key, in a fixed order; parse_config_text re-reads it exactly.
std::string to_config_text(const ExperimentConfig& cfg);

/// Throws UsageError if `cfg` is unusable for its command.
void validate_config(const ExperimentConfig& cfg);

std::string command_usage();

using Cell = std::variant<std::monostate, std::int64_t, double, bool, std::string, Rational>;

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct ResultMetadata {
  std::string tool_version;
  std::uint64_t seed = 0;
  std::optional<std::string> timestamp;
  std::string config_echo;
};

struct SweepResult {
  Command command = Command::kLatticeSim;
  ResultTable table;
  ResultMetadata metadata;
  /// Empty when every lemma or zero-error check passed.
  std::vector<std::string> failures;
  /// bounds only: free-form trace lines.
  std::vector<std::string> provenance;
};

/// Runs the configured command.
SweepResult run_sweep(const ExperimentConfig& cfg);

std::string tool_version();

/// Shortest round-trip decimal; throws std::domain_error on NaN or Inf.
std::string format_number(double v);

void write_csv(std::ostream& out, const ResultTable& table);
void write_json(std::ostream& out, const SweepResult& result);
void write_metadata(std::ostream& out, const ResultMetadata& meta);

/// Writes to cfg.output_path (or `fallback` when empty) in the resolved
/// format, plus "<out>.meta.json" next to a file output. Throws IoError.
void emit_result(const SweepResult& result, const ExperimentConfig& cfg, std::ostream& fallback);

OutputFormat resolve_format(const ExperimentConfig& cfg);

}  // namespace dofkit

#endif  // DOFKIT_EXPERIMENT_HPP_
