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

#ifndef ZBTAIL_SERIALIZE_HPP_
#define ZBTAIL_SERIALIZE_HPP_

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "zbtail/cycle_type.hpp"
#include "zbtail/discrete_dist.hpp"
#include "zbtail/matrix.hpp"
#include "zbtail/oracle.hpp"
#include "zbtail/perm_law.hpp"
#include "zbtail/permutation.hpp"
#include "zbtail/piecewise_density.hpp"

namespace zbtail {

// JSON / CSV marshalling. All parsers throw std::invalid_argument with a
// message naming the offending field; all emitters produce deterministic
// output (sorted object keys, no timestamps). Numbers are formatted through
// one shortest-round-trip path so JSON and CSV emissions of the same run
// carry identical values.

std::string format_number(double x);

// {"atoms": [[value, prob], ...]}
nlohmann::json dist_to_json(const DiscreteDist& d);
DiscreteDist dist_from_json(const nlohmann::json& j);

// {"breakpoints": [...], "densities": [...]}
nlohmann::json density_to_json(const PiecewiseDensity& p);
PiecewiseDensity density_from_json(const nlohmann::json& j);

// {"n": ..., "entries": [[...], ...]}
nlohmann::json matrix_to_json(const SquareMatrix& a);
SquareMatrix matrix_from_json(const nlohmann::json& j);
// n lines of n comma-separated reals.
SquareMatrix matrix_from_csv(std::istream& in);
// Dispatches on extension: .json -> JSON, anything else -> CSV. Throws
// std::invalid_argument when the file cannot be read or parsed.
SquareMatrix load_matrix(const std::string& path);

// Cycle type as the plain counts vector [f_1, ..., f_n].
nlohmann::json cycle_type_to_json(const CycleType& f);
CycleType cycle_type_from_json(const nlohmann::json& j);

// Permutations cross the boundary as 1-based image vectors.
nlohmann::json permutation_to_json(const Permutation& p);
Permutation permutation_from_json(const nlohmann::json& j);

// Law echo for report audit trails, e.g. {"law": "cycle-type",
// "cycle_type": [...]} or {"law": "mixture", "components": [...]}.
nlohmann::json law_to_json(const PermLaw& law);

nlohmann::json tail_estimate_to_json(const TailEstimate& e);

nlohmann::json domination_report_to_json(const DominationReport& r);
// Columns: t, kind, applicable, bound, tail, ci_low, ci_high, satisfied,
// margin — one row per report row, same values as the JSON form.
void domination_report_to_csv(const DominationReport& r, std::ostream& out);

}  // namespace zbtail

#endif  // ZBTAIL_SERIALIZE_HPP_
