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


#include "dofkit/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dofkit/bounds.hpp"
#include "dofkit/lattice.hpp"
#include "dofkit/matrix_io.hpp"
#include "dofkit/multilevel.hpp"
#include "dofkit/random.hpp"
#include "dofkit/sumset.hpp"

#ifndef DOFKIT_VERSION
#define DOFKIT_VERSION "0.0.0"
#endif

namespace dofkit {
namespace {

// Config keys in echo order. "check" and "timestamp" are flags on the
// command line but ordinary keys in a file.
constexpr std::array<const char*, 21> kKeys{
    "command", "matrix", "seed",     "powers",      "epsilon", "trials", "s-range", "threads", "lemma", "max-card",
    "coord-range", "dim", "c",       "levels",      "scheme",  "check",  "search-base", "triple", "format", "out",
    "timestamp"};

template <typename T>
T parse_integer(const std::string& text, const std::string& key) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw UsageError("'" + key + "' expects an integer, got '" + text + "'");
  return value;
}

double parse_real(const std::string& text, const std::string& key) {
  double value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw UsageError("'" + key + "' expects a finite number, got '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw UsageError("'" + key + "' expects true or false, got '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (text.back() == sep) out.emplace_back();
  return out;
}

Command parse_command(const std::string& text) {
  if (text == "lattice-sim") return Command::kLatticeSim;
  if (text == "sumset-verify" || text == "sumset verify") return Command::kSumsetVerify;
  if (text == "multilevel") return Command::kMultilevel;
  if (text == "bounds") return Command::kBounds;
  if (text == "sweep") return Command::kSweep;
  throw UsageError("unknown command '" + text + "'");
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "command") {
    cfg.command = parse_command(value);
  } else if (key == "matrix") {
    if (value.empty()) throw UsageError("'matrix' expects a path");
    cfg.matrix_path = value;
  } else if (key == "seed") {
    cfg.seed = parse_integer<std::uint64_t>(value, key);
  } else if (key == "powers") {
    cfg.power_grid.clear();
    for (const auto& item : split(value, ',')) cfg.power_grid.push_back(parse_real(item, key));
  } else if (key == "epsilon") {
    cfg.epsilon = parse_real(value, key);
  } else if (key == "trials") {
    cfg.trials = parse_integer<std::uint64_t>(value, key);
  } else if (key == "s-range") {
    if (value == "auto") {
      cfg.s_range.reset();
    } else {
      cfg.s_range = parse_integer<std::int64_t>(value, key);
    }
  } else if (key == "threads") {
    cfg.threads = parse_integer<unsigned>(value, key);
  } else if (key == "lemma") {
    static const std::map<std::string, SumsetLemma> kLemmas{{"cover", SumsetLemma::kCover},
                                                            {"plunnecke", SumsetLemma::kPlunnecke},
                                                            {"setsum", SumsetLemma::kSetsum},
                                                            {"exg", SumsetLemma::kExg},
                                                            {"bsg", SumsetLemma::kBsg}};
    auto it = kLemmas.find(value);
    if (it == kLemmas.end()) throw UsageError("'lemma' must be cover, plunnecke, setsum, exg or bsg");
    cfg.lemma = it->second;
  } else if (key == "max-card") {
    cfg.max_card = parse_integer<std::size_t>(value, key);
  } else if (key == "coord-range") {
    cfg.coord_range = parse_integer<std::int64_t>(value, key);
  } else if (key == "dim") {
    cfg.dim = parse_integer<std::size_t>(value, key);
  } else if (key == "c") {
    cfg.c = parse_real(value, key);
  } else if (key == "levels") {
    cfg.levels = parse_integer<int>(value, key);
  } else if (key == "scheme") {
    if (value.empty()) throw UsageError("'scheme' expects 'default' or a path");
    cfg.scheme = value;
  } else if (key == "check") {
    if (value == "exhaustive") {
      cfg.exhaustive = true;
    } else if (value == "none") {
      cfg.exhaustive = false;
    } else {
      throw UsageError("'check' must be exhaustive or none");
    }
  } else if (key == "search-base") {
    cfg.search_base = parse_integer<std::int64_t>(value, key);
  } else if (key == "triple") {
    const auto parts = split(value, ',');
    if (parts.size() != 3) throw UsageError("'triple' expects i,j,k");
    std::array<std::size_t, 3> t{};
    for (std::size_t i = 0; i < 3; ++i) {
      t[i] = parse_integer<std::size_t>(parts[i], key);
      if (t[i] < 1) throw UsageError("'triple' users are 1-based");
    }
    cfg.triple = t;
  } else if (key == "format") {
    if (value == "csv") {
      cfg.format = OutputFormat::kCsv;
    } else if (value == "json") {
      cfg.format = OutputFormat::kJson;
    } else if (value == "auto") {
      cfg.format = OutputFormat::kAuto;
    } else {
      throw UsageError("'format' must be csv, json or auto");
    }
  } else if (key == "out") {
    cfg.output_path = value;
  } else if (key == "timestamp") {
    cfg.timestamp = parse_bool(value, key);
  } else {
    throw UsageError("unknown key '" + key + "'");
  }
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

GainMatrix load_matrix(const ExperimentConfig& cfg) {
  const auto& path = *cfg.matrix_path;
  std::ifstream in(path);
  if (!in) throw IoError("cannot read matrix file '" + path.string() + "'");
  try {
    return read_gain_matrix(in);
  } catch (const MatrixParseError& e) {
    throw UsageError(path.string() + ":" + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

std::int64_t as_cell(std::size_t v) { return static_cast<std::int64_t>(v); }

// ---- lattice-sim and sweep ----

struct PointResult {
  double power = 0;
  TruncatedLattice lattice;
  std::vector<Separation> separation;
  SymbolErrorReport sim;
};

std::vector<PointResult> simulate_grid(const ExperimentConfig& cfg, const GainMatrix& h) {
  std::vector<PointResult> out;
  for (std::size_t g = 0; g < cfg.power_grid.size(); ++g) {
    const double power = cfg.power_grid[g];
    const TruncatedLattice lat = build_codebook(power, cfg.epsilon);
    std::vector<Separation> seps;
    for (std::size_t i = 0; i < h.k(); ++i) {
      const auto* alpha = std::get_if<QuadraticIrrational>(&h.at(i, i));
      if (!alpha) throw UsageError("lattice simulation needs quadratic irrational direct gains; user " +
                                   std::to_string(i + 1) + " has " + to_string(h.at(i, i)));
      const std::int64_t range = cfg.s_range ? *cfg.s_range : 2 * interference_index_bound(h, i, lat);
      seps.push_back(min_separation(*alpha, lat, range));
    }
    SymbolErrorOptions opts;
    opts.s_range = cfg.s_range;
    opts.threads = cfg.threads;
    SymbolErrorReport sim = simulate_symbol_error(h, power, cfg.epsilon, cfg.trials, derive_seed(cfg.seed, g), opts);
    out.push_back({power, lat, std::move(seps), std::move(sim)});
  }
  return out;
}

GainMatrix load_lattice_matrix(const ExperimentConfig& cfg) {
  GainMatrix h = load_matrix(cfg);
  try {
    for (std::size_t i = 0; i < h.k(); ++i) {
      for (std::size_t j = 0; j < h.k(); ++j) {
        if (i != j && !is_integer(h.at(i, j))) throw std::invalid_argument("cross gains must be integers");
      }
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return h;
}

SweepResult run_lattice(const ExperimentConfig& cfg) {
  const GainMatrix h = load_lattice_matrix(cfg);
  SweepResult r;
  r.table.columns = {"P",           "epsilon",         "user",          "cardinality",         "min_gap",
                     "p_eps_threshold", "separation_ok", "empirical_error", "analytic_error_bound", "fano_rate",
                     "rate_ratio"};
  for (const auto& pt : simulate_grid(cfg, h)) {
    const double half_log = 0.5 * std::log2(pt.power);
    for (std::size_t i = 0; i < h.k(); ++i) {
      const double fano = fano_rate_bound(pt.lattice.cardinality(), pt.sim.error_rate[i]);
      r.table.rows.push_back({pt.power, cfg.epsilon, as_cell(i + 1), pt.lattice.cardinality(),
                              pt.separation[i].min_gap, pt.separation[i].threshold, pt.separation[i].satisfied,
                              pt.sim.error_rate[i], pt.sim.analytic_bound, fano, fano / half_log});
    }
  }
  return r;
}

SweepResult run_grid_sweep(const ExperimentConfig& cfg) {
  const GainMatrix h = load_lattice_matrix(cfg);
  SweepResult r;
  r.table.columns = {"row",      "P",         "epsilon",    "cardinality", "min_gap",  "separation_ok",
                     "max_empirical_error", "analytic_error_bound", "sum_rate", "rate_ratio", "dof_slope"};
  std::vector<std::pair<double, double>> points;
  for (const auto& pt : simulate_grid(cfg, h)) {
    double min_gap = pt.separation.front().min_gap;
    bool ok = true;
    double worst = 0, sum_rate = 0;
    for (std::size_t i = 0; i < h.k(); ++i) {
      min_gap = std::min(min_gap, pt.separation[i].min_gap);
      ok = ok && pt.separation[i].satisfied;
      worst = std::max(worst, pt.sim.error_rate[i]);
      sum_rate += fano_rate_bound(pt.lattice.cardinality(), pt.sim.error_rate[i]);
    }
    points.emplace_back(pt.power, sum_rate);
    r.table.rows.push_back({std::string("point"), pt.power, cfg.epsilon, pt.lattice.cardinality(), min_gap, ok, worst,
                            pt.sim.analytic_bound, sum_rate, sum_rate / (0.5 * std::log2(pt.power)),
                            std::monostate{}});
  }
  std::vector<Cell> summary(r.table.columns.size(), std::monostate{});
  summary[0] = std::string("summary");
  summary[2] = cfg.epsilon;
  if (points.size() >= 2) summary.back() = dof_slope_estimate(points).slope;
  r.table.rows.push_back(std::move(summary));
  return r;
}

// ---- sumset verify ----

IntVectorSet random_set(SplitMix64& rng, std::size_t size, std::int64_t range, std::size_t dim) {
  std::uniform_int_distribution<std::int64_t> coord(-range, range);
  if (dim == 1) {
    // partial Fisher-Yates over [-range, range]
    std::vector<std::int64_t> pool(static_cast<std::size_t>(2 * range + 1));
    std::iota(pool.begin(), pool.end(), -range);
    for (std::size_t i = 0; i < size; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(size);
    return IntVectorSet::scalars(pool);
  }
  std::set<IntVector> seen;
  while (seen.size() < size) {
    IntVector v(dim);
    for (auto& x : v) x = coord(rng);
    seen.insert(std::move(v));
  }
  return IntVectorSet(dim, {seen.begin(), seen.end()});
}

std::int64_t random_coefficient(SplitMix64& rng) {
  std::uniform_int_distribution<std::int64_t> pick(1, 6);
  const std::int64_t v = pick(rng);
  return v <= 3 ? -v : v - 3;
}

SweepResult run_sumset(const ExperimentConfig& cfg) {
  SweepResult r;
  r.table.columns = {"trial", "lemma", "a_size", "b_size", "p", "q", "sumset_size", "constant", "lhs", "bound", "pass"};
  const std::size_t card_cap = cfg.lemma == SumsetLemma::kBsg ? std::min<std::size_t>(cfg.max_card, 12) : cfg.max_card;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    SplitMix64 rng(derive_seed(cfg.seed, t));
    std::uniform_int_distribution<std::size_t> card(1, card_cap);
    const std::size_t na = card(rng);
    const std::size_t nb = card(rng);
    IntVectorSet a = random_set(rng, na, cfg.coord_range, cfg.dim);
    IntVectorSet b = random_set(rng, nb, cfg.coord_range, cfg.dim);
    const std::int64_t p = random_coefficient(rng);
    const std::int64_t q = random_coefficient(rng);

    std::vector<Cell> row{static_cast<std::int64_t>(t), to_string(cfg.lemma)};
    bool pass = false;
    switch (cfg.lemma) {
      case SumsetLemma::kCover: {
        const RuzsaCover cover = ruzsa_cover(a, b);
        row.insert(row.end(), {as_cell(a.size()), as_cell(b.size()), std::monostate{}, std::monostate{},
                               as_cell(cover.sumset_size), as_cell(cover.cover.size()),
                               as_cell(cover.cover.size() * a.size()), as_cell(cover.sumset_size)});
        pass = cover.ok();
        break;
      }
      case SumsetLemma::kPlunnecke: {
        const std::int64_t ap = std::abs(p), aq = std::abs(q);
        const PlunneckeReport rep = plunnecke_check(a, b, ap, aq);
        row.insert(row.end(), {as_cell(a.size()), as_cell(b.size()), ap, aq, as_cell(rep.sumset_size), rep.k_tilde,
                               as_cell(rep.lhs), rep.rhs});
        pass = rep.holds;
        break;
      }
      case SumsetLemma::kSetsum: {
        const SetsumReport rep = setsum_bound_check(a, b, p, q);
        row.insert(row.end(), {as_cell(a.size()), as_cell(b.size()), p, q, as_cell(rep.sumset_size), rep.k,
                               as_cell(rep.lhs), rep.rhs});
        pass = rep.holds;
        break;
      }
      case SumsetLemma::kExg: {
        if (a.size() < b.size()) std::swap(a, b);
        const ExgResult res = exg_construct(a, b, cfg.c);
        row.insert(row.end(), {as_cell(a.size()), as_cell(b.size()), std::monostate{}, std::monostate{},
                               as_cell(res.report.s_size), res.report.epsilon, as_cell(res.report.s_size),
                               res.report.sumset_upper_bound});
        pass = res.report.ok();
        break;
      }
      case SumsetLemma::kBsg: {
        const PairSubset f = PairSubset::full(a, b);
        const double root = std::sqrt(static_cast<double>(a.size() * b.size()));
        const double kp = static_cast<double>(sumset(a, b).size()) / root;
        const BsgResult res = bsg_construct(a, b, f, 1.0, kp);
        row.insert(row.end(), {as_cell(a.size()), as_cell(b.size()), std::monostate{}, std::monostate{},
                               as_cell(res.report.sumset_size), kp, as_cell(res.report.sumset_size),
                               res.report.sumset_bound});
        pass = res.report.certified;
        break;
      }
    }
    row.emplace_back(pass);
    if (!pass) r.failures.push_back("trial " + std::to_string(t) + ": " + to_string(cfg.lemma) + " check failed");
    r.table.rows.push_back(std::move(row));
  }
  return r;
}

// ---- multilevel ----

SweepResult run_multilevel(const ExperimentConfig& cfg) {
  LevelScheme s;
  if (cfg.scheme == "default") {
    s = LevelScheme::default_scheme(cfg.levels);
  } else {
    std::ifstream in(cfg.scheme);
    if (!in) throw IoError("cannot read scheme file '" + cfg.scheme + "'");
    try {
      s = read_scheme(in, cfg.levels);
    } catch (const std::invalid_argument& e) {
      throw UsageError(cfg.scheme + ": " + e.what());
    }
  }
  const SchemeValidation v = validate_scheme(s);
  SweepResult r;
  r.table.columns = {"row", "levels", "base",  "a1",        "a2",     "a3",       "p",          "q",
                     "valid",  "check", "tuples_checked", "zero_error", "scheme_dof", "sum_rate_bits", "diagnostics"};
  std::vector<std::string> notes = v.diagnostics;
  for (const auto& d : v.diagnostics) r.failures.push_back(d);

  Cell tuples = std::monostate{}, zero = std::monostate{};
  if (cfg.exhaustive) {
    ZeroErrorReport rep;
    try {
      rep = exhaustive_zero_error(s, cfg.levels);
    } catch (const std::length_error& e) {
      throw UsageError(e.what());
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    tuples = static_cast<std::int64_t>(rep.tuples_checked);
    zero = rep.zero_error;
    if (!rep.zero_error) {
      notes.push_back(rep.failure);
      r.failures.push_back("zero-error check failed: " + rep.failure);
    }
  }
  std::string diag;
  for (const auto& n : notes) diag += (diag.empty() ? "" : "; ") + n;
  double bits = 0;
  for (const auto& a : s.alphabets) bits += std::log2(static_cast<double>(a.size()));
  r.table.rows.push_back({std::string("scheme"), static_cast<std::int64_t>(s.levels), s.base, join(s.alphabets[0]), join(s.alphabets[1]),
                          join(s.alphabets[2]), s.gains.p, s.gains.q, v.valid,
                          std::string(cfg.exhaustive ? "exhaustive" : "none"), tuples, zero, scheme_dof(s),
                          bits * s.levels, diag});

  if (cfg.search_base != 0) {
    const AlphabetSearchResult found = search_alphabets(s.gains, cfg.search_base);
    if (found.best) {
      const LevelScheme& b = *found.best;
      double best_bits = 0;
      for (const auto& a : b.alphabets) best_bits += std::log2(static_cast<double>(a.size()));
      const double reference = scheme_dof(s);
      const std::string note = std::to_string(found.candidates) + " candidates; " +
                               (found.best_dof > reference + 1e-12 ? "improves on" : "does not improve on") +
                               " the scheme above (" + format_number(reference) + ")";
      r.table.rows.push_back({std::string("search"), static_cast<std::int64_t>(cfg.levels), b.base, join(b.alphabets[0]),
                              join(b.alphabets[1]), join(b.alphabets[2]), b.gains.p, b.gains.q, true,
                              std::string("none"), std::monostate{}, std::monostate{}, found.best_dof,
                              best_bits * cfg.levels, note});
    }
  }
  return r;
}

// ---- bounds ----

SweepResult run_bounds(const ExperimentConfig& cfg) {
  const GainMatrix h = load_matrix(cfg);
  BoundReport rep;
  try {
    if (cfg.triple) {
      const auto& t = *cfg.triple;
      rep = triple_bound(h, {t[0] - 1, t[1] - 1, t[2] - 1});
    } else if (h.k() >= 3 && h.all_rational() && is_fully_connected(h)) {
      rep = rational_Kuser_bound(h);
    } else if (h.k() == 3) {
      rep = triple_bound(h, {0, 1, 2});
    } else {
      throw std::invalid_argument("bounds needs a fully connected rational channel with K >= 3, or a 3-user channel "
                                  "with nonzero lower triangle");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  SweepResult r;
  r.table.columns = {"row", "users", "raw_p", "raw_q", "p", "q", "d", "rule", "epsilon", "epsilon_decimal",
                     "bound", "bound_decimal"};
  for (const auto& t : rep.triples) {
    r.table.rows.push_back({std::string("triple"),
                            std::to_string(t.users[0] + 1) + " " + std::to_string(t.users[1] + 1) + " " +
                                std::to_string(t.users[2] + 1),
                            t.raw_p, t.raw_q, t.triple.p, t.triple.q, t.exponent.d, to_string(t.exponent.rule),
                            t.epsilon, to_decimal_string(t.epsilon, 6), std::monostate{}, std::monostate{}});
  }
  const std::size_t k = cfg.triple ? 3 : rep.users;
  r.table.rows.push_back({std::string("bound"), std::to_string(k) + " users", std::monostate{}, std::monostate{},
                          std::monostate{}, std::monostate{}, rep.d_exponent, std::string("min"), rep.epsilon,
                          to_decimal_string(rep.epsilon, 6), rep.dof_upper, to_decimal_string(rep.dof_upper, 6)});
  r.provenance = rep.provenance;
  return r;
}

std::string csv_field(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, Rational>) {
          return to_fraction_string(v);
        } else {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (char ch : v) {
            if (ch == '"') quoted += '"';
            quoted += ch;
          }
          return quoted + "\"";
        }
      },
      cell);
}

nlohmann::ordered_json json_value(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          format_number(v);  // rejects NaN / Inf
          return v;
        } else if constexpr (std::is_same_v<T, Rational>) {
          return to_fraction_string(v);
        } else {
          return v;
        }
      },
      cell);
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::kLatticeSim:
      return "lattice-sim";
    case Command::kSumsetVerify:
      return "sumset-verify";
    case Command::kMultilevel:
      return "multilevel";
    case Command::kBounds:
      return "bounds";
    case Command::kSweep:
      return "sweep";
  }
  return "?";
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::kAuto:
      return "auto";
    case OutputFormat::kCsv:
      return "csv";
    case OutputFormat::kJson:
      return "json";
  }
  return "?";
}

std::string to_string(SumsetLemma l) {
  switch (l) {
    case SumsetLemma::kCover:
      return "cover";
    case SumsetLemma::kPlunnecke:
      return "plunnecke";
    case SumsetLemma::kSetsum:
      return "setsum";
    case SumsetLemma::kExg:
      return "exg";
    case SumsetLemma::kBsg:
      return "bsg";
  }
  return "?";
}

std::string tool_version() { return DOFKIT_VERSION; }

std::string command_usage() {
  return "usage: dofkit <command> [flags]\n"
         "commands:\n"
         "  lattice-sim    --matrix F [--epsilon E] [--powers P1,P2,..] [--trials N] [--seed S] [--s-range auto|N]\n"
         "  sweep          same flags as lattice-sim; one aggregated row per power plus a slope row\n"
         "  sumset verify  --lemma cover|plunnecke|setsum|exg|bsg [--trials N] [--max-card N] [--seed S]\n"
         "  multilevel     [--levels L] [--scheme default|FILE] [--check exhaustive] [--search-base Q]\n"
         "  bounds         --matrix F [--triple i,j,k]\n"
         "common flags: --out FILE --format csv|json|auto --threads N --config FILE --timestamp\n"
         "              --version --help\n";
}

ExperimentConfig parse_config_text(std::istream& in, ExperimentConfig cfg) {
  std::string line;
  int line_no = 0;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) throw UsageError(where + "expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw UsageError(where + "duplicate key '" + key + "'");
    try {
      apply_key(cfg, key, value);
    } catch (const UsageError& e) {
      throw UsageError(where + e.what());
    }
  }
  return cfg;
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  auto put = [&](const char* key, const std::string& value) { out << key << " = " << value << '\n'; };
  std::string powers;
  for (std::size_t i = 0; i < cfg.power_grid.size(); ++i) powers += (i ? "," : "") + format_number(cfg.power_grid[i]);
  put("command", to_string(cfg.command));
  if (cfg.matrix_path) put("matrix", cfg.matrix_path->string());
  put("seed", std::to_string(cfg.seed));
  put("powers", powers);
  put("epsilon", format_number(cfg.epsilon));
  put("trials", std::to_string(cfg.trials));
  put("s-range", cfg.s_range ? std::to_string(*cfg.s_range) : "auto");
  put("threads", std::to_string(cfg.threads));
  put("lemma", to_string(cfg.lemma));
  put("max-card", std::to_string(cfg.max_card));
  put("coord-range", std::to_string(cfg.coord_range));
  put("dim", std::to_string(cfg.dim));
  put("c", format_number(cfg.c));
  put("levels", std::to_string(cfg.levels));
  put("scheme", cfg.scheme);
  put("check", cfg.exhaustive ? "exhaustive" : "none");
  put("search-base", std::to_string(cfg.search_base));
  if (cfg.triple) {
    const auto& t = *cfg.triple;
    put("triple", std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]));
  }
  put("format", to_string(cfg.format));
  if (!cfg.output_path.empty()) put("out", cfg.output_path.string());
  put("timestamp", cfg.timestamp ? "true" : "false");
  return out.str();
}

ExperimentConfig parse_config(const std::vector<std::string>& args) {
  std::size_t first_flag = 0;
  std::string command;
  while (first_flag < args.size() && !args[first_flag].empty() && args[first_flag][0] != '-') {
    command += (command.empty() ? "" : " ") + args[first_flag];
    ++first_flag;
  }

  CLI::App app{"dofkit"};
  app.set_help_flag();
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  for (const char* key : kKeys) {
    const std::string k = key;
    if (k == "command" || k == "timestamp") continue;
    options.emplace_back(k, app.add_option("--" + k, values[k]));
  }
  std::string config_path;
  app.add_option("--config", config_path);
  auto* timestamp = app.add_flag("--timestamp");

  std::vector<std::string> rest(args.rbegin(), args.rend() - static_cast<std::ptrdiff_t>(first_flag));
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  ExperimentConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot read config file '" + config_path + "'");
    try {
      cfg = parse_config_text(in);
    } catch (const UsageError& e) {
      throw UsageError(config_path + ": " + e.what());
    }
  }
  if (!command.empty()) {
    cfg.command = parse_command(command);
  } else if (config_path.empty()) {
    throw UsageError("missing command\n" + command_usage());
  }
  for (const auto& [key, opt] : options) {
    if (opt->count() == 0) continue;
    try {
      apply_key(cfg, key, values[key]);
    } catch (const UsageError& e) {
      throw UsageError("--" + key + ": " + e.what());
    }
  }
  if (timestamp->count() > 0) cfg.timestamp = true;
  validate_config(cfg);
  return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.threads < 1) throw UsageError("--threads must be at least 1");
  const std::string name = to_string(cfg.command);
  switch (cfg.command) {
    case Command::kLatticeSim:
    case Command::kSweep: {
      if (!cfg.matrix_path) throw UsageError("--matrix is required for " + name);
      if (!(cfg.epsilon > 0 && cfg.epsilon < 0.25)) throw UsageError("--epsilon must lie in (0, 1/4)");
      if (cfg.power_grid.empty()) throw UsageError("invalid grid: no powers given");
      for (std::size_t i = 0; i < cfg.power_grid.size(); ++i) {
        if (!(cfg.power_grid[i] > 1)) throw UsageError("invalid grid: powers must exceed 1");
        if (i > 0 && !(cfg.power_grid[i] > cfg.power_grid[i - 1])) {
          throw UsageError("invalid grid: powers must be strictly increasing");
        }
      }
      if (cfg.trials < 1) throw UsageError("--trials must be at least 1");
      if (cfg.s_range && *cfg.s_range < 0) throw UsageError("--s-range must be auto or a nonnegative integer");
      break;
    }
    case Command::kSumsetVerify: {
      if (cfg.trials < 1) throw UsageError("--trials must be at least 1");
      if (cfg.max_card < 1) throw UsageError("--max-card must be at least 1");
      if (cfg.lemma == SumsetLemma::kBsg && cfg.max_card > 12) throw UsageError("--max-card is at most 12 for bsg");
      if (cfg.dim < 1 || cfg.dim > 8) throw UsageError("--dim must lie in [1, 8]");
      if (cfg.coord_range < 0 || cfg.coord_range > 1'000'000) throw UsageError("--coord-range must lie in [0, 1e6]");
      if (!(cfg.c > 1)) throw UsageError("--c must exceed 1");
      double points = std::pow(2.0 * static_cast<double>(cfg.coord_range) + 1, static_cast<double>(cfg.dim));
      if (points < static_cast<double>(cfg.max_card)) throw UsageError("--max-card exceeds the coordinate box");
      break;
    }
    case Command::kMultilevel:
      if (cfg.levels < 1) throw UsageError("--levels must be at least 1");
      if (cfg.search_base != 0 && (cfg.search_base < 2 || cfg.search_base > 10)) {
        throw UsageError("--search-base must be 0 (off) or lie in [2, 10]");
      }
      break;
    case Command::kBounds:
      if (!cfg.matrix_path) throw UsageError("--matrix is required for bounds");
      break;
  }
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  validate_config(cfg);
  SweepResult r;
  switch (cfg.command) {
    case Command::kLatticeSim:
      r = run_lattice(cfg);
      break;
    case Command::kSweep:
      r = run_grid_sweep(cfg);
      break;
    case Command::kSumsetVerify:
      r = run_sumset(cfg);
      break;
    case Command::kMultilevel:
      r = run_multilevel(cfg);
      break;
    case Command::kBounds:
      r = run_bounds(cfg);
      break;
  }
  r.command = cfg.command;
  r.metadata.tool_version = tool_version();
  r.metadata.seed = cfg.seed;
  if (cfg.timestamp) r.metadata.timestamp = utc_timestamp();
  r.metadata.config_echo = to_config_text(cfg);
  return r;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite value in result table");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const ResultTable& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const SweepResult& result) {
  nlohmann::ordered_json doc;
  doc["command"] = to_string(result.command);
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : result.table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[result.table.columns[i]] = json_value(row[i]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  if (!result.provenance.empty()) doc["provenance"] = result.provenance;
  doc["failures"] = result.failures;
  out << doc.dump(2) << '\n';
}

void write_metadata(std::ostream& out, const ResultMetadata& meta) {
  nlohmann::ordered_json doc;
  doc["tool"] = "dofkit";
  doc["version"] = meta.tool_version;
  doc["seed"] = meta.seed;
  if (meta.timestamp) doc["timestamp"] = *meta.timestamp;
  doc["config"] = meta.config_echo;
  out << doc.dump(2) << '\n';
}

OutputFormat resolve_format(const ExperimentConfig& cfg) {
  if (cfg.format != OutputFormat::kAuto) return cfg.format;
  const auto ext = cfg.output_path.extension();
  if (ext == ".json") return OutputFormat::kJson;
  if (ext == ".csv") return OutputFormat::kCsv;
  return cfg.command == Command::kBounds ? OutputFormat::kJson : OutputFormat::kCsv;
}

void emit_result(const SweepResult& result, const ExperimentConfig& cfg, std::ostream& fallback) {
  std::ostringstream body;
  if (resolve_format(cfg) == OutputFormat::kJson) {
    write_json(body, result);
  } else {
    write_csv(body, result.table);
  }
  if (cfg.output_path.empty()) {
    fallback << body.str();
    return;
  }
  auto write_file = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << text;
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
  };
  write_file(cfg.output_path, body.str());
  std::ostringstream meta;
  write_metadata(meta, result.metadata);
  write_file(cfg.output_path.string() + ".meta.json", meta.str());
}

}  // namespace dofkit
