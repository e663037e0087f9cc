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

#include "zbtail/serialize.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zbtail {
namespace {

const nlohmann::json& require_field(const nlohmann::json& j,
                                    const std::string& name) {
  if (!j.is_object() || !j.contains(name)) {
    throw std::invalid_argument("missing field: " + name);
  }
  return j.at(name);
}

double require_number(const nlohmann::json& j, const std::string& context) {
  if (!j.is_number()) {
    throw std::invalid_argument(context + " must be a number");
  }
  return j.get<double>();
}

std::uint64_t require_count(const nlohmann::json& j,
                            const std::string& context) {
  if (!j.is_number_unsigned()) {
    throw std::invalid_argument(context + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

const nlohmann::json& require_array(const nlohmann::json& j,
                                    const std::string& context) {
  if (!j.is_array()) {
    throw std::invalid_argument(context + " must be an array");
  }
  return j;
}

std::vector<double> number_vector(const nlohmann::json& j,
                                  const std::string& context) {
  require_array(j, context);
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& entry : j) {
    out.push_back(require_number(entry, context + " entry"));
  }
  return out;
}

// Re-tags value-level constructor failures so every parse path reports
// std::invalid_argument, as documented in the header.
template <typename Fn>
auto as_parse_error(const std::string& context, Fn&& fn) {
  try {
    return fn();
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(context + ": " + e.what());
  }
}

double parse_csv_cell(const std::string& cell, std::size_t line_no) {
  std::size_t begin = cell.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    throw std::invalid_argument("matrix csv line " + std::to_string(line_no) +
                                ": empty cell");
  }
  const std::size_t end = cell.find_last_not_of(" \t\r");
  const std::string trimmed = cell.substr(begin, end - begin + 1);
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(trimmed, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (consumed != trimmed.size()) {
    throw std::invalid_argument("matrix csv line " + std::to_string(line_no) +
                                ": bad number '" + trimmed + "'");
  }
  return value;
}

}  // namespace

std::string format_number(double x) {
  // One shortest-round-trip formatter for every emitter; non-finite values
  // become null, matching the JSON encoding.
  return nlohmann::json(x).dump();
}

nlohmann::json dist_to_json(const DiscreteDist& d) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& [value, prob] : d.atoms()) {
    atoms.push_back(nlohmann::json::array({value, prob}));
  }
  return nlohmann::json{{"atoms", std::move(atoms)}};
}

DiscreteDist dist_from_json(const nlohmann::json& j) {
  const auto& atoms_json = require_array(require_field(j, "atoms"), "atoms");
  std::vector<DiscreteDist::Atom> atoms;
  atoms.reserve(atoms_json.size());
  for (const auto& entry : atoms_json) {
    if (!entry.is_array() || entry.size() != 2) {
      throw std::invalid_argument("atoms entries must be [value, prob] pairs");
    }
    atoms.emplace_back(require_number(entry[0], "atom value"),
                       require_number(entry[1], "atom prob"));
  }
  return as_parse_error("atoms",
                        [&] { return DiscreteDist(std::move(atoms)); });
}

nlohmann::json density_to_json(const PiecewiseDensity& p) {
  return nlohmann::json{{"breakpoints", p.breakpoints()},
                        {"densities", p.densities()}};
}

PiecewiseDensity density_from_json(const nlohmann::json& j) {
  auto breaks = number_vector(require_field(j, "breakpoints"), "breakpoints");
  auto dens = number_vector(require_field(j, "densities"), "densities");
  return as_parse_error("density", [&] {
    return PiecewiseDensity(std::move(breaks), std::move(dens));
  });
}

nlohmann::json matrix_to_json(const SquareMatrix& a) {
  return nlohmann::json{{"n", a.n()}, {"entries", a.rows()}};
}

SquareMatrix matrix_from_json(const nlohmann::json& j) {
  const auto& entries = require_array(require_field(j, "entries"), "entries");
  std::vector<std::vector<double>> rows;
  rows.reserve(entries.size());
  for (const auto& row : entries) {
    rows.push_back(number_vector(row, "entries row"));
  }
  if (j.contains("n") &&
      require_count(j.at("n"), "n") != rows.size()) {
    throw std::invalid_argument("n does not match the entries row count");
  }
  return as_parse_error("entries",
                        [&] { return SquareMatrix(std::move(rows)); });
}

SquareMatrix matrix_from_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t content = line.find_first_not_of(" \t\r");
    if (content == std::string::npos || line[content] == '#') {
      continue;
    }
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      row.push_back(parse_csv_cell(cell, line_no));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("matrix csv line " +
                                  std::to_string(line_no) +
                                  ": inconsistent column count");
    }
    rows.push_back(std::move(row));
  }
  return as_parse_error("matrix csv",
                        [&] { return SquareMatrix(std::move(rows)); });
}

SquareMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read file: " + path);
  }
  const bool json_ext =
      path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  if (json_ext) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(path + ": " + e.what());
    }
    return matrix_from_json(j);
  }
  return matrix_from_csv(in);
}

nlohmann::json cycle_type_to_json(const CycleType& f) {
  return nlohmann::json(f.counts());
}

CycleType cycle_type_from_json(const nlohmann::json& j) {
  require_array(j, "cycle_type");
  std::vector<std::size_t> counts;
  counts.reserve(j.size());
  for (const auto& entry : j) {
    counts.push_back(require_count(entry, "cycle_type entry"));
  }
  return as_parse_error("cycle_type",
                        [&] { return CycleType(std::move(counts)); });
}

nlohmann::json permutation_to_json(const Permutation& p) {
  std::vector<std::size_t> one_based(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    one_based[i] = p[i] + 1;
  }
  return nlohmann::json(one_based);
}

Permutation permutation_from_json(const nlohmann::json& j) {
  require_array(j, "permutation");
  Permutation perm;
  perm.reserve(j.size());
  for (const auto& entry : j) {
    const std::uint64_t image = require_count(entry, "permutation entry");
    if (image == 0 || image > j.size()) {
      throw std::invalid_argument(
          "permutation entries must lie in 1..n (1-based images)");
    }
    perm.push_back(static_cast<std::size_t>(image - 1));
  }
  if (!is_permutation(perm)) {
    throw std::invalid_argument("permutation entries must be distinct");
  }
  return perm;
}

nlohmann::json law_to_json(const PermLaw& law) {
  nlohmann::json j{{"law", to_string(law.kind())}, {"n", law.n()}};
  switch (law.kind()) {
    case LawKind::uniform:
    case LawKind::fpf_involution:
      break;
    case LawKind::cycle_type:
      j["cycle_type"] = cycle_type_to_json(law.type());
      break;
    case LawKind::mixture: {
      nlohmann::json components = nlohmann::json::array();
      for (const auto& [type, weight] : law.components()) {
        components.push_back(nlohmann::json{
            {"cycle_type", cycle_type_to_json(type)}, {"weight", weight}});
      }
      j["components"] = std::move(components);
      break;
    }
  }
  return j;
}

nlohmann::json tail_estimate_to_json(const TailEstimate& e) {
  return nlohmann::json{
      {"point", e.point},
      {"ci_low", e.ci_low},
      {"ci_high", e.ci_high},
      {"trials", e.trials},
      {"method",
       e.method == TailMethod::exact ? "exact" : "monte-carlo"}};
}

nlohmann::json domination_report_to_json(const DominationReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back(nlohmann::json{{"t", row.t},
                                  {"kind", to_string(row.kind)},
                                  {"applicable", row.applicable},
                                  {"bound", row.bound},
                                  {"tail", row.tail},
                                  {"ci_low", row.ci_low},
                                  {"ci_high", row.ci_high},
                                  {"satisfied", row.satisfied},
                                  {"margin", row.margin}});
  }
  return nlohmann::json{{"pass", r.pass}, {"rows", std::move(rows)}};
}

void domination_report_to_csv(const DominationReport& r, std::ostream& out) {
  out << "t,kind,applicable,bound,tail,ci_low,ci_high,satisfied,margin\n";
  for (const auto& row : r.rows) {
    out << format_number(row.t) << ',' << to_string(row.kind) << ','
        << (row.applicable ? "true" : "false") << ','
        << format_number(row.bound) << ',' << format_number(row.tail) << ','
        << format_number(row.ci_low) << ',' << format_number(row.ci_high)
        << ',' << (row.satisfied ? "true" : "false") << ','
        << format_number(row.margin) << '\n';
  }
}

}  // namespace zbtail
