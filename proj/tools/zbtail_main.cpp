// Copyright 2026 The zbtail Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// zbtail: evaluate zero-bias tail bounds, build zero-bias distributions and
// couplings, compute permutation-statistic moments under several permutation
// laws, and validate every bound against exact or Monte Carlo tails.
//
// Exit codes: 0 success / validation pass, 1 validation failure,
// 2 input or domain error, 3 enumeration resource cap exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zbtail/bounds.hpp"
#include "zbtail/cycle_type.hpp"
#include "zbtail/discrete_dist.hpp"
#include "zbtail/errors.hpp"
#include "zbtail/matrix.hpp"
#include "zbtail/oracle.hpp"
#include "zbtail/perm_law.hpp"
#include "zbtail/permstat.hpp"
#include "zbtail/permutation.hpp"
#include "zbtail/piecewise_density.hpp"
#include "zbtail/rng.hpp"
#include "zbtail/serialize.hpp"
#include "zbtail/zero_bias.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

// ---------------------------------------------------------------------------
// Small parsing helpers (strict: every character must be consumed).

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string piece;
  std::stringstream stream(s);
  while (std::getline(stream, piece, sep)) {
    out.push_back(piece);
  }
  if (!s.empty() && s.back() == sep) {
    out.emplace_back();
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (s.empty() || consumed != s.size()) {
    throw std::invalid_argument(what + ": bad number '" + s + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(const std::string& s, const std::string& what) {
  std::size_t consumed = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(s, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (s.empty() || consumed != s.size() || s.front() == '-') {
    throw std::invalid_argument(what + ": bad non-negative integer '" + s +
                                "'");
  }
  return value;
}

// ---------------------------------------------------------------------------
// t-grid: explicit --t values or a MIN:MAX:COUNT spec, linear or log spaced.

struct TGrid {
  std::vector<double> values;
  json echo;
};

TGrid resolve_t_grid(const std::vector<double>& t_values,
                     const std::string& grid_spec, bool log_spacing) {
  if (!grid_spec.empty() && !t_values.empty()) {
    throw std::invalid_argument("pass either --t or --t-grid, not both");
  }
  TGrid out;
  if (grid_spec.empty()) {
    if (t_values.empty()) {
      throw std::invalid_argument("one of --t or --t-grid is required");
    }
    out.values = t_values;
    out.echo = json{{"values", t_values}};
    return out;
  }
  const auto parts = split(grid_spec, ':');
  if (parts.size() != 3) {
    throw std::invalid_argument("--t-grid must be MIN:MAX:COUNT");
  }
  const double lo = parse_double(parts[0], "--t-grid MIN");
  const double hi = parse_double(parts[1], "--t-grid MAX");
  const std::uint64_t count = parse_unsigned(parts[2], "--t-grid COUNT");
  if (count < 1) {
    throw std::invalid_argument("--t-grid COUNT must be >= 1");
  }
  if (count == 1) {
    if (lo != hi) {
      throw std::invalid_argument("--t-grid with COUNT=1 needs MIN == MAX");
    }
  } else if (!(hi > lo)) {
    throw std::invalid_argument("--t-grid needs MAX > MIN");
  }
  if (log_spacing && !(lo > 0)) {
    throw std::invalid_argument("--log spacing needs MIN > 0");
  }
  out.values.reserve(count);
  if (count == 1) {
    out.values.push_back(lo);
  } else if (log_spacing) {
    const double step = (std::log(hi) - std::log(lo)) / (count - 1);
    for (std::uint64_t i = 0; i < count; ++i) {
      out.values.push_back(lo * std::exp(step * i));
    }
    out.values.back() = hi;
  } else {
    const double step = (hi - lo) / (count - 1);
    for (std::uint64_t i = 0; i < count; ++i) {
      out.values.push_back(lo + step * i);
    }
    out.values.back() = hi;
  }
  out.echo = json{{"min", lo},
                  {"max", hi},
                  {"count", count},
                  {"spacing", log_spacing ? "log" : "linear"}};
  return out;
}

// ---------------------------------------------------------------------------
// Law construction from --law/--n/--cycle-type/--component.

struct LawSpec {
  std::string name = "uniform";
  std::uint64_t n = 0;  // 0 = not given
  std::string cycle_counts;
  std::vector<std::string> components;
};

std::vector<std::size_t> parse_counts(const std::string& s,
                                      const std::string& what) {
  std::vector<std::size_t> counts;
  for (const auto& piece : split(s, ',')) {
    counts.push_back(
        static_cast<std::size_t>(parse_unsigned(piece, what + " count")));
  }
  if (counts.empty()) {
    throw std::invalid_argument(what + " must list at least one count");
  }
  return counts;
}

zbtail::PermLaw build_law(const LawSpec& spec, std::size_t matrix_n) {
  auto resolve_n = [&](std::size_t implied) -> std::size_t {
    std::size_t n = implied;
    if (matrix_n != 0) {
      if (n != 0 && n != matrix_n) {
        throw std::invalid_argument("law size disagrees with the matrix size");
      }
      n = matrix_n;
    }
    if (spec.n != 0) {
      if (n != 0 && n != spec.n) {
        throw std::invalid_argument("--n disagrees with the law/matrix size");
      }
      n = spec.n;
    }
    if (n == 0) {
      throw std::invalid_argument("--n is required without --matrix");
    }
    return n;
  };
  if (spec.name == "uniform") {
    return zbtail::PermLaw::uniform(resolve_n(0));
  }
  if (spec.name == "fpf-involution") {
    return zbtail::PermLaw::fpf_involution(resolve_n(0));
  }
  if (spec.name == "cycle-type") {
    if (spec.cycle_counts.empty()) {
      throw std::invalid_argument(
          "--cycle-type is required for the cycle-type law");
    }
    zbtail::CycleType f(parse_counts(spec.cycle_counts, "--cycle-type"));
    resolve_n(f.n());
    return zbtail::PermLaw::cycle_type(f);
  }
  if (spec.name == "mixture") {
    if (spec.components.empty()) {
      throw std::invalid_argument(
          "--component is required for the mixture law (repeatable, "
          "COUNTS:WEIGHT)");
    }
    std::vector<std::pair<zbtail::CycleType, double>> components;
    for (const auto& comp : spec.components) {
      const std::size_t colon = comp.rfind(':');
      if (colon == std::string::npos) {
        throw std::invalid_argument("--component must be COUNTS:WEIGHT, got '" +
                                    comp + "'");
      }
      zbtail::CycleType f(
          parse_counts(comp.substr(0, colon), "--component"));
      const double weight =
          parse_double(comp.substr(colon + 1), "--component weight");
      resolve_n(f.n());
      components.emplace_back(std::move(f), weight);
    }
    return zbtail::PermLaw::mixture(std::move(components));
  }
  throw std::invalid_argument(
      "unknown law '" + spec.name +
      "' (expected uniform, fpf-involution, cycle-type, or mixture)");
}

// ---------------------------------------------------------------------------
// Output plumbing.

void emit(const std::string& output_path, const std::string& content) {
  if (output_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot write file: " + output_path);
  }
  out << content;
}

std::string json_report(const std::string& command, const json& config,
                        const json& results,
                        const std::optional<bool>& pass = std::nullopt) {
  json report{{"schema_version", 1},
              {"command", command},
              {"config", config},
              {"results", results}};
  if (pass) {
    report["pass"] = *pass;
  }
  return report.dump(2) + "\n";
}

std::string csv_preamble(const std::string& command, const json& config) {
  return "# schema_version: 1\n# command: " + command +
         "\n# config: " + config.dump() + "\n";
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") {
    throw std::invalid_argument("--format must be json or csv");
  }
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// ---------------------------------------------------------------------------
// Bound kinds: resolution of --kind with event-aware defaults.

std::vector<zbtail::BoundKind> resolve_kinds(
    const std::vector<std::string>& names, bool coupling_available,
    bool upper_tail_only) {
  std::vector<zbtail::BoundKind> kinds;
  if (!names.empty()) {
    for (const auto& name : names) {
      const auto kind = zbtail::bound_kind_from_string(name);
      if (!kind) {
        throw std::invalid_argument("unknown bound kind '" + name + "'");
      }
      kinds.push_back(*kind);
    }
    return kinds;
  }
  kinds.push_back(zbtail::BoundKind::one_sided);
  if (!upper_tail_only) {
    kinds.push_back(zbtail::BoundKind::two_sided);
  }
  if (coupling_available) {
    kinds.push_back(zbtail::BoundKind::tlogt_tight);
    kinds.push_back(zbtail::BoundKind::tlogt_loose);
  }
  kinds.push_back(zbtail::BoundKind::bernstein);
  return kinds;
}

json kinds_echo(const std::vector<zbtail::BoundKind>& kinds) {
  json out = json::array();
  for (auto kind : kinds) {
    out.push_back(zbtail::to_string(kind));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared evaluation context for `bound` and `compare`: either direct
// (sigma2, c [, mu]) parameters or a matrix + law.

struct EvalContext {
  bool direct = true;
  double sigma2 = 0.0;
  double c = 0.0;
  std::optional<double> mu;
  double bernstein_a = 4.0;
  std::optional<zbtail::SquareMatrix> matrix;
  std::optional<zbtail::PermLaw> law;
  std::optional<double> coupling_c;  // matrix mode, when a constant exists

  zbtail::BoundValue eval(zbtail::BoundKind kind, double t) const {
    if (kind == zbtail::BoundKind::chatterjee) {
      if (!mu) {
        throw std::domain_error(
            "the chatterjee kind needs --mu (or a matrix law mean)");
      }
      return zbtail::chatterjee(*mu, t);
    }
    if (kind == zbtail::BoundKind::hoeffding_two_sided) {
      return zbtail::zb_hoeffding_two_sided(sigma2, t);
    }
    if (direct) {
      return zbtail::evaluate(kind, zbtail::BoundInput{sigma2, c, t},
                              bernstein_a);
    }
    return zbtail::tail_bound(*matrix, *law, t, kind);
  }

  json annotations() const {
    json out;
    out["sigma2"] = sigma2;
    out["mu"] = mu ? json(*mu) : json(nullptr);
    if (direct) {
      out["c"] = c;
      out["regime_threshold"] =
          c > 0 ? json(zbtail::regime_threshold(sigma2, c)) : json(nullptr);
    } else {
      out["c"] = coupling_c ? json(*coupling_c) : json(nullptr);
      out["regime_threshold"] =
          coupling_c ? json(zbtail::regime_threshold(sigma2, *coupling_c))
                     : json(nullptr);
    }
    out["chatterjee_crossover"] =
        mu ? json(zbtail::chatterjee_crossover(*mu, sigma2)) : json(nullptr);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Option bags. One per subcommand keeps CLI11 wiring simple.

struct CommonIo {
  std::string format = "json";
  std::string output;
};

struct BoundOpts {
  CommonIo io;
  double sigma2 = 0.0;
  double c = 0.0;
  double mu = 0.0;
  bool has_sigma2 = false;
  bool has_c = false;
  bool has_mu = false;
  std::string matrix_path;
  LawSpec law;
  std::vector<double> t_values;
  std::string t_grid;
  bool log_spacing = false;
  std::vector<std::string> kind_names;
  double bernstein_a = 4.0;
  bool has_bernstein_a = false;
};

struct MomentsOpts {
  CommonIo io;
  std::string matrix_path;
  LawSpec law;
};

struct SampleOpts {
  CommonIo io;
  std::string matrix_path;
  LawSpec law;
  std::uint64_t count = 10;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

struct ZeroBiasOpts {
  CommonIo io;
  std::vector<std::string> dists;
  bool center = false;
  std::string emit_what = "density";
  std::uint64_t n = 1000;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

struct ValidateOpts {
  CommonIo io;
  std::string matrix_path;
  LawSpec law;
  std::vector<double> t_values;
  std::string t_grid;
  bool log_spacing = false;
  std::vector<std::string> kind_names;
  bool monte_carlo = false;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double level = 0.999;
  double bound_scale = 1.0;
  std::uint64_t max_uniform_n = zbtail::EnumLimits{}.max_uniform_n;
  std::uint64_t max_involution_n = zbtail::EnumLimits{}.max_involution_n;
  std::uint64_t max_class_size = zbtail::EnumLimits{}.max_class_size;
};

struct CompareOpts : BoundOpts {};

// ---------------------------------------------------------------------------
// Context resolution shared by bound/compare.

EvalContext make_context(const BoundOpts& opts) {
  EvalContext ctx;
  ctx.bernstein_a = opts.bernstein_a;
  if (!opts.matrix_path.empty()) {
    if (opts.has_sigma2 || opts.has_c || opts.has_mu) {
      throw std::invalid_argument(
          "pass either --sigma2/--c/--mu or --matrix, not both");
    }
    if (opts.has_bernstein_a) {
      throw std::invalid_argument(
          "--bernstein-a applies only to direct --sigma2 mode; the "
          "permutation coupling fixes a = 4");
    }
    ctx.direct = false;
    ctx.matrix = zbtail::load_matrix(opts.matrix_path);
    ctx.law = build_law(opts.law, ctx.matrix->n());
    const zbtail::LawMoments m = zbtail::law_moments(*ctx.matrix, *ctx.law);
    ctx.sigma2 = m.variance;
    ctx.mu = m.mean;
    try {
      ctx.coupling_c = zbtail::coupling_constant(*ctx.matrix, *ctx.law);
    } catch (const std::domain_error&) {
      ctx.coupling_c = std::nullopt;  // e.g. mixtures: per-component constants
    }
    return ctx;
  }
  if (!opts.has_sigma2) {
    throw std::invalid_argument("one of --sigma2 or --matrix is required");
  }
  ctx.direct = true;
  ctx.sigma2 = opts.sigma2;
  ctx.c = opts.c;
  if (opts.has_mu) {
    ctx.mu = opts.mu;
  }
  return ctx;
}

json context_config(const BoundOpts& opts, const EvalContext& ctx,
                    const TGrid& grid,
                    const std::vector<zbtail::BoundKind>& kinds) {
  json config{{"format", opts.io.format},
              {"seed", nullptr},
              {"t", grid.echo},
              {"kinds", kinds_echo(kinds)},
              {"bernstein_a", ctx.direct ? json(opts.bernstein_a) : json(4.0)},
              {"parameters", ctx.annotations()}};
  if (ctx.direct) {
    config["source"] = "direct";
  } else {
    config["source"] = "matrix";
    config["matrix"] = opts.matrix_path;
    config["law"] = zbtail::law_to_json(*ctx.law);
  }
  return config;
}

// ---------------------------------------------------------------------------
// bound: table of bound values over the t-grid.

int run_bound(const BoundOpts& opts) {
  check_format(opts.io.format);
  const EvalContext ctx = make_context(opts);
  const TGrid grid =
      resolve_t_grid(opts.t_values, opts.t_grid, opts.log_spacing);
  const std::vector<zbtail::BoundKind> kinds = resolve_kinds(
      opts.kind_names,
      ctx.direct ? opts.c > 0 : true /* per-kind errors surface later */,
      false);

  struct Row {
    double t;
    zbtail::BoundValue value;
  };
  std::vector<Row> rows;
  rows.reserve(grid.values.size() * kinds.size());
  for (double t : grid.values) {
    for (auto kind : kinds) {
      rows.push_back({t, ctx.eval(kind, t)});
    }
  }

  const json config = context_config(opts, ctx, grid, kinds);
  if (opts.io.format == "json") {
    json results = json::array();
    for (const auto& row : rows) {
      results.push_back(json{{"t", row.t},
                             {"kind", zbtail::to_string(row.value.kind)},
                             {"applicable", row.value.applicable},
                             {"raw", row.value.raw},
                             {"clamped", row.value.clamped}});
    }
    emit(opts.io.output, json_report("bound", config, results));
  } else {
    std::ostringstream out;
    out << csv_preamble("bound", config);
    out << "t,kind,applicable,raw,clamped\n";
    for (const auto& row : rows) {
      out << zbtail::format_number(row.t) << ','
          << zbtail::to_string(row.value.kind) << ','
          << (row.value.applicable ? "true" : "false") << ','
          << zbtail::format_number(row.value.raw) << ','
          << zbtail::format_number(row.value.clamped) << '\n';
    }
    emit(opts.io.output, out.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// compare: per-t winner among the requested kinds (upper-tail family by
// default), plus all values; the plot-ready emission.

int run_compare(const CompareOpts& opts) {
  check_format(opts.io.format);
  const EvalContext ctx = make_context(opts);
  const TGrid grid =
      resolve_t_grid(opts.t_values, opts.t_grid, opts.log_spacing);
  const std::vector<zbtail::BoundKind> kinds =
      resolve_kinds(opts.kind_names, ctx.direct ? opts.c > 0 : true, true);

  struct Row {
    double t;
    std::vector<zbtail::BoundValue> values;
    std::optional<zbtail::BoundKind> winner;
  };
  std::vector<Row> rows;
  rows.reserve(grid.values.size());
  for (double t : grid.values) {
    Row row;
    row.t = t;
    for (auto kind : kinds) {
      const zbtail::BoundValue value = ctx.eval(kind, t);
      if (value.applicable &&
          (!row.winner || value.clamped < ctx.eval(*row.winner, t).clamped)) {
        row.winner = kind;
      }
      row.values.push_back(value);
    }
    rows.push_back(std::move(row));
  }

  const json config = context_config(opts, ctx, grid, kinds);
  if (opts.io.format == "json") {
    json results = json::array();
    for (const auto& row : rows) {
      json values;
      for (const auto& value : row.values) {
        values[zbtail::to_string(value.kind)] =
            json{{"applicable", value.applicable},
                 {"raw", value.raw},
                 {"clamped", value.clamped}};
      }
      results.push_back(
          json{{"t", row.t},
               {"values", values},
               {"winner", row.winner ? json(zbtail::to_string(*row.winner))
                                     : json(nullptr)}});
    }
    emit(opts.io.output, json_report("compare", config, results));
  } else {
    std::ostringstream out;
    out << csv_preamble("compare", config);
    out << "t";
    for (auto kind : kinds) {
      out << ',' << zbtail::to_string(kind);
    }
    out << ",winner\n";
    for (const auto& row : rows) {
      out << zbtail::format_number(row.t);
      for (const auto& value : row.values) {
        out << ',';
        if (value.applicable) {
          out << zbtail::format_number(value.clamped);
        }
      }
      out << ','
          << (row.winner ? zbtail::to_string(*row.winner) : "") << '\n';
    }
    emit(opts.io.output, out.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// moments: law moments, norms, coupling constant, thresholds.

int run_moments(const MomentsOpts& opts) {
  check_format(opts.io.format);
  if (opts.matrix_path.empty()) {
    throw std::invalid_argument("--matrix is required");
  }
  const zbtail::SquareMatrix a = zbtail::load_matrix(opts.matrix_path);
  const zbtail::PermLaw law = build_law(opts.law, a.n());
  const zbtail::LawMoments m = zbtail::law_moments(a, law);

  json results{{"n", a.n()}, {"mean", m.mean}, {"variance", m.variance}};
  results["sup_norm"] = law.kind() == zbtail::LawKind::uniform
                            ? zbtail::sup_norm_centered(a)
                            : zbtail::sup_norm_centered_offdiag(a);
  try {
    const double c = zbtail::coupling_constant(a, law);
    results["coupling_c"] = c;
    results["regime_threshold"] =
        m.variance > 0 ? json(zbtail::regime_threshold(m.variance, c))
                       : json(nullptr);
  } catch (const std::domain_error& e) {
    results["coupling_c"] = nullptr;
    results["regime_threshold"] = nullptr;
    results["coupling_note"] = e.what();
  }
  results["chatterjee_crossover"] =
      law.kind() == zbtail::LawKind::uniform
          ? json(zbtail::chatterjee_crossover(m.mean, m.variance))
          : json(nullptr);

  const json config{{"format", opts.io.format},
                    {"seed", nullptr},
                    {"matrix", opts.matrix_path},
                    {"law", zbtail::law_to_json(law)}};
  if (opts.io.format == "json") {
    emit(opts.io.output, json_report("moments", config, results));
  } else {
    std::ostringstream out;
    out << csv_preamble("moments", config);
    out << "key,value\n";
    for (const auto& [key, value] : results.items()) {
      out << key << ',' << value.dump() << '\n';
    }
    emit(opts.io.output, out.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sample: seeded permutation draws, optionally with the statistic value.

int run_sample(const SampleOpts& opts) {
  check_format(opts.io.format);
  std::optional<zbtail::SquareMatrix> a;
  if (!opts.matrix_path.empty()) {
    a = zbtail::load_matrix(opts.matrix_path);
  }
  const zbtail::PermLaw law = build_law(opts.law, a ? a->n() : 0);
  if (opts.count == 0) {
    throw std::invalid_argument("--count must be >= 1");
  }
  const std::uint64_t seed = opts.has_seed ? opts.seed : fresh_seed();
  zbtail::Rng rng(seed, 0);

  std::vector<zbtail::Permutation> perms;
  perms.reserve(opts.count);
  for (std::uint64_t i = 0; i < opts.count; ++i) {
    perms.push_back(law.sample(rng));
  }

  json config{{"format", opts.io.format},
              {"seed", seed},
              {"count", opts.count},
              {"law", zbtail::law_to_json(law)}};
  if (a) {
    config["matrix"] = opts.matrix_path;
  }
  if (opts.io.format == "json") {
    json results = json::array();
    for (const auto& perm : perms) {
      json row{{"perm", zbtail::permutation_to_json(perm)}};
      if (a) {
        row["y"] = zbtail::hoeffding_stat(*a, perm);
      }
      results.push_back(std::move(row));
    }
    emit(opts.io.output, json_report("sample", config, results));
  } else {
    std::ostringstream out;
    out << csv_preamble("sample", config);
    out << (a ? "index,perm,y\n" : "index,perm\n");
    for (std::size_t i = 0; i < perms.size(); ++i) {
      out << i << ',';
      for (std::size_t k = 0; k < perms[i].size(); ++k) {
        out << (k ? " " : "") << perms[i][k] + 1;
      }
      if (a) {
        out << ',' << zbtail::format_number(zbtail::hoeffding_stat(*a, perms[i]));
      }
      out << '\n';
    }
    emit(opts.io.output, out.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// zerobias: the transform's density, or seeded samples / coupling draws.

zbtail::DiscreteDist load_dist(const std::string& arg) {
  json j;
  const auto content_start = arg.find_first_not_of(" \t\n");
  if (content_start != std::string::npos && arg[content_start] == '{') {
    try {
      j = json::parse(arg);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("--dist: ") + e.what());
    }
  } else {
    std::ifstream in(arg);
    if (!in) {
      throw std::invalid_argument("cannot read file: " + arg);
    }
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(arg + ": " + e.what());
    }
  }
  return zbtail::dist_from_json(j);
}

int run_zerobias(const ZeroBiasOpts& opts) {
  check_format(opts.io.format);
  if (opts.dists.empty()) {
    throw std::invalid_argument("--dist is required (repeat for sums)");
  }
  if (opts.emit_what != "density" && opts.emit_what != "samples") {
    throw std::invalid_argument("--emit must be density or samples");
  }
  std::vector<zbtail::DiscreteDist> components;
  components.reserve(opts.dists.size());
  json dists_echo = json::array();
  for (const auto& arg : opts.dists) {
    zbtail::DiscreteDist d = load_dist(arg);
    if (opts.center) {
      d = d.centered();
    }
    dists_echo.push_back(zbtail::dist_to_json(d));
    components.push_back(std::move(d));
  }
  const bool sum_mode = components.size() > 1;
  const zbtail::DiscreteDist total =
      sum_mode ? zbtail::convolve(components) : components.front();
  const zbtail::PiecewiseDensity density = zbtail::zero_bias_transform(total);

  const bool sampling = opts.emit_what == "samples";
  const std::uint64_t seed =
      sampling ? (opts.has_seed ? opts.seed : fresh_seed()) : 0;
  json config{{"format", opts.io.format},
              {"seed", sampling ? json(seed) : json(nullptr)},
              {"dists", dists_echo},
              {"center", opts.center},
              {"emit", opts.emit_what}};
  if (sampling) {
    config["n"] = opts.n;
  }

  if (!sampling) {
    const json results{{"variance", total.variance()},
                       {"density", zbtail::density_to_json(density)}};
    if (opts.io.format == "json") {
      emit(opts.io.output, json_report("zerobias", config, results));
    } else {
      std::ostringstream out;
      out << csv_preamble("zerobias", config);
      out << "breakpoint_low,breakpoint_high,density\n";
      const auto& breaks = density.breakpoints();
      const auto& dens = density.densities();
      for (std::size_t i = 0; i < dens.size(); ++i) {
        out << zbtail::format_number(breaks[i]) << ','
            << zbtail::format_number(breaks[i + 1]) << ','
            << zbtail::format_number(dens[i]) << '\n';
      }
      emit(opts.io.output, out.str());
    }
    return kExitOk;
  }

  if (opts.n == 0) {
    throw std::invalid_argument("--n must be >= 1 for --emit samples");
  }
  zbtail::Rng rng(seed, 0);
  if (!sum_mode) {
    std::vector<double> samples;
    samples.reserve(opts.n);
    for (std::uint64_t i = 0; i < opts.n; ++i) {
      samples.push_back(density.sample(rng));
    }
    if (opts.io.format == "json") {
      const json results{{"variance", total.variance()},
                         {"samples", samples}};
      emit(opts.io.output, json_report("zerobias", config, results));
    } else {
      std::ostringstream out;
      out << csv_preamble("zerobias", config);
      out << "index,y_star\n";
      for (std::size_t i = 0; i < samples.size(); ++i) {
        out << i << ',' << zbtail::format_number(samples[i]) << '\n';
      }
      emit(opts.io.output, out.str());
    }
    return kExitOk;
  }

  const zbtail::SumCoupler coupler(components);
  std::vector<zbtail::CouplingSample> draws;
  draws.reserve(opts.n);
  for (std::uint64_t i = 0; i < opts.n; ++i) {
    draws.push_back(coupler.draw(rng));
  }
  if (opts.io.format == "json") {
    json samples = json::array();
    for (const auto& draw : draws) {
      samples.push_back(json{{"y", draw.y},
                             {"y_star", draw.y_star},
                             {"replaced", draw.replaced + 1}});
    }
    const json results{{"variance", coupler.total_variance()},
                       {"coupling_bound", coupler.coupling_bound()},
                       {"samples", std::move(samples)}};
    emit(opts.io.output, json_report("zerobias", config, results));
  } else {
    std::ostringstream out;
    out << csv_preamble("zerobias", config);
    out << "index,y,y_star,replaced\n";
    for (std::size_t i = 0; i < draws.size(); ++i) {
      out << i << ',' << zbtail::format_number(draws[i].y) << ','
          << zbtail::format_number(draws[i].y_star) << ','
          << draws[i].replaced + 1 << '\n';
    }
    emit(opts.io.output, out.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate: domination report; exit 1 on any applicable violation.

int run_validate(const ValidateOpts& opts) {
  check_format(opts.io.format);
  if (opts.matrix_path.empty()) {
    throw std::invalid_argument("--matrix is required");
  }
  const zbtail::SquareMatrix a = zbtail::load_matrix(opts.matrix_path);
  const zbtail::PermLaw law = build_law(opts.law, a.n());
  const TGrid grid =
      resolve_t_grid(opts.t_values, opts.t_grid, opts.log_spacing);
  const std::vector<zbtail::BoundKind> kinds =
      resolve_kinds(opts.kind_names, true, false);

  zbtail::DominationOptions dopts;
  dopts.use_monte_carlo = opts.monte_carlo;
  dopts.trials = opts.trials;
  dopts.seed = opts.seed;
  dopts.threads = opts.threads;
  dopts.level = opts.level;
  dopts.bound_scale = opts.bound_scale;
  dopts.limits.max_uniform_n = opts.max_uniform_n;
  dopts.limits.max_involution_n = opts.max_involution_n;
  dopts.limits.max_class_size = opts.max_class_size;

  const zbtail::DominationReport report =
      zbtail::validate_domination(a, law, grid.values, kinds, dopts);

  // Deliberately no --threads echo: reports must be byte-identical across
  // worker counts.
  json config{{"format", opts.io.format},
              {"seed", opts.seed},
              {"matrix", opts.matrix_path},
              {"law", zbtail::law_to_json(law)},
              {"t", grid.echo},
              {"kinds", kinds_echo(kinds)},
              {"method", opts.monte_carlo ? "monte-carlo" : "exact"},
              {"trials", opts.monte_carlo ? json(opts.trials) : json(nullptr)},
              {"level", opts.monte_carlo ? json(opts.level) : json(nullptr)},
              {"bound_scale", opts.bound_scale},
              {"limits", json{{"max_uniform_n", opts.max_uniform_n},
                              {"max_involution_n", opts.max_involution_n},
                              {"max_class_size", opts.max_class_size}}}};

  if (opts.io.format == "json") {
    emit(opts.io.output,
         json_report("validate", config,
                     zbtail::domination_report_to_json(report), report.pass));
  } else {
    std::ostringstream out;
    out << csv_preamble("validate", config);
    out << "# pass: " << (report.pass ? "true" : "false") << '\n';
    zbtail::domination_report_to_csv(report, out);
    emit(opts.io.output, out.str());
  }
  return report.pass ? kExitOk : kExitValidationFailure;
}

// ---------------------------------------------------------------------------
// CLI wiring.

void add_io_options(CLI::App* cmd, CommonIo& io) {
  cmd->add_option("--format", io.format, "Output format: json or csv")
      ->default_str("json");
  cmd->add_option("--output", io.output,
                  "Output file path (default: stdout)");
}

void add_law_options(CLI::App* cmd, LawSpec& law) {
  cmd->add_option("--law", law.name,
                  "Permutation law: uniform, fpf-involution, cycle-type, "
                  "or mixture")
      ->default_str("uniform");
  cmd->add_option("--n", law.n, "Permutation size (when no matrix is given)");
  cmd->add_option("--cycle-type", law.cycle_counts,
                  "Cycle type counts f_1,f_2,... (cycle-type law)");
  cmd->add_option("--component", law.components,
                  "Mixture component COUNTS:WEIGHT (repeatable)");
}

void add_grid_options(CLI::App* cmd, std::vector<double>& t_values,
                      std::string& t_grid, bool& log_spacing) {
  cmd->add_option("--t", t_values, "Deviation threshold(s) (repeatable)");
  cmd->add_option("--t-grid", t_grid, "Threshold grid MIN:MAX:COUNT");
  cmd->add_flag("--log", log_spacing, "Log-spaced --t-grid");
}

void add_bound_options(CLI::App* cmd, BoundOpts& opts) {
  add_io_options(cmd, opts.io);
  auto* sigma2 =
      cmd->add_option("--sigma2", opts.sigma2, "Variance (direct mode)");
  auto* c = cmd->add_option("--c", opts.c, "Coupling bound c (direct mode)")
                ->default_str("0");
  auto* mu = cmd->add_option(
      "--mu", opts.mu, "Mean (enables the chatterjee kind in direct mode)");
  cmd->add_option("--matrix", opts.matrix_path,
                  "Matrix file (.json or CSV); computes sigma2/c from the law");
  add_law_options(cmd, opts.law);
  add_grid_options(cmd, opts.t_values, opts.t_grid, opts.log_spacing);
  cmd->add_option("--kind", opts.kind_names,
                  "Bound kind (repeatable): one-sided, two-sided, "
                  "tlogt-tight, tlogt-loose, bernstein, bennett, chatterjee, "
                  "hoeffding-two-sided");
  auto* ba = cmd->add_option("--bernstein-a", opts.bernstein_a,
                             "Bernstein-family constant a (4 = zero-bias, "
                             "2/3 = classical)")
                 ->default_str("4");
  cmd->parse_complete_callback([&opts, sigma2, c, mu, ba]() {
    opts.has_sigma2 = sigma2->count() > 0;
    opts.has_c = c->count() > 0;
    opts.has_mu = mu->count() > 0;
    opts.has_bernstein_a = ba->count() > 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "zbtail: zero-bias tail bounds, couplings, permutation statistics, "
      "and oracle validation"};
  app.require_subcommand(1);

  BoundOpts bound_opts;
  auto* bound_cmd = app.add_subcommand(
      "bound", "Evaluate tail bounds over a t-grid");
  add_bound_options(bound_cmd, bound_opts);

  CompareOpts compare_opts;
  auto* compare_cmd = app.add_subcommand(
      "compare",
      "Rank bounds per t and report the winner (upper-tail kinds by default)");
  add_bound_options(compare_cmd, compare_opts);

  MomentsOpts moments_opts;
  auto* moments_cmd = app.add_subcommand(
      "moments", "Statistic moments, norms, and coupling constants");
  add_io_options(moments_cmd, moments_opts.io);
  moments_cmd->add_option("--matrix", moments_opts.matrix_path,
                          "Matrix file (.json or CSV)");
  add_law_options(moments_cmd, moments_opts.law);

  SampleOpts sample_opts;
  auto* sample_cmd = app.add_subcommand(
      "sample", "Draw permutations from a law (optionally with Y values)");
  add_io_options(sample_cmd, sample_opts.io);
  sample_cmd->add_option("--matrix", sample_opts.matrix_path,
                         "Matrix file; adds the statistic value per draw");
  add_law_options(sample_cmd, sample_opts.law);
  sample_cmd->add_option("--count", sample_opts.count, "Number of draws")
      ->default_str("10");
  auto* sample_seed =
      sample_cmd->add_option("--seed", sample_opts.seed, "RNG seed");
  sample_cmd->parse_complete_callback([&sample_opts, sample_seed]() {
    sample_opts.has_seed = sample_seed->count() > 0;
  });

  ZeroBiasOpts zerobias_opts;
  auto* zerobias_cmd = app.add_subcommand(
      "zerobias",
      "Zero-bias transform: density, samples, or coupling draws for sums");
  add_io_options(zerobias_cmd, zerobias_opts.io);
  zerobias_cmd->add_option(
      "--dist", zerobias_opts.dists,
      "Distribution as inline JSON {\"atoms\":[[v,p],...]} or a file path "
      "(repeat for independent sums)");
  zerobias_cmd->add_flag("--center", zerobias_opts.center,
                         "Subtract the mean first");
  zerobias_cmd->add_option("--emit", zerobias_opts.emit_what,
                           "What to emit: density or samples")
      ->default_str("density");
  zerobias_cmd->add_option("--n", zerobias_opts.n,
                           "Sample count for --emit samples")
      ->default_str("1000");
  auto* zerobias_seed =
      zerobias_cmd->add_option("--seed", zerobias_opts.seed, "RNG seed");
  zerobias_cmd->parse_complete_callback([&zerobias_opts, zerobias_seed]() {
    zerobias_opts.has_seed = zerobias_seed->count() > 0;
  });

  ValidateOpts validate_opts;
  auto* validate_cmd = app.add_subcommand(
      "validate",
      "Check every applicable bound against exact or Monte Carlo tails");
  add_io_options(validate_cmd, validate_opts.io);
  validate_cmd->add_option("--matrix", validate_opts.matrix_path,
                           "Matrix file (.json or CSV)");
  add_law_options(validate_cmd, validate_opts.law);
  add_grid_options(validate_cmd, validate_opts.t_values, validate_opts.t_grid,
                   validate_opts.log_spacing);
  validate_cmd->add_option("--kind", validate_opts.kind_names,
                           "Bound kind (repeatable); default: one-sided, "
                           "two-sided, tlogt-tight, tlogt-loose, bernstein");
  validate_cmd->add_flag("--mc", validate_opts.monte_carlo,
                         "Monte Carlo tails (compares the CI upper limit)");
  validate_cmd->add_option("--trials", validate_opts.trials,
                           "Monte Carlo draw count")
      ->default_str("100000");
  validate_cmd
      ->add_option("--seed", validate_opts.seed,
                   "RNG seed (required: validation runs are reproducible)")
      ->required();
  validate_cmd->add_option("--threads", validate_opts.threads,
                           "Worker threads (never changes the output bytes)")
      ->default_str("1");
  validate_cmd->add_option("--level", validate_opts.level,
                           "Confidence level for Monte Carlo intervals")
      ->default_str("0.999");
  validate_cmd
      ->add_option("--self-test-bound-scale", validate_opts.bound_scale,
                   "Scale every bound before comparison (negative control)")
      ->group("");
  validate_cmd
      ->add_option("--max-uniform-n", validate_opts.max_uniform_n,
                   "Enumeration cap for the uniform law")
      ->group("Limits");
  validate_cmd
      ->add_option("--max-involution-n", validate_opts.max_involution_n,
                   "Enumeration cap for involutions")
      ->group("Limits");
  validate_cmd
      ->add_option("--max-class-size", validate_opts.max_class_size,
                   "Enumeration cap for cycle-type classes")
      ->group("Limits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (bound_cmd->parsed()) {
      return run_bound(bound_opts);
    }
    if (compare_cmd->parsed()) {
      return run_compare(compare_opts);
    }
    if (moments_cmd->parsed()) {
      return run_moments(moments_opts);
    }
    if (sample_cmd->parsed()) {
      return run_sample(sample_opts);
    }
    if (zerobias_cmd->parsed()) {
      return run_zerobias(zerobias_opts);
    }
    if (validate_cmd->parsed()) {
      return run_validate(validate_opts);
    }
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
  } catch (const zbtail::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
