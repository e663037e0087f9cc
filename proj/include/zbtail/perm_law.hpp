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

#ifndef ZBTAIL_PERM_LAW_HPP_
#define ZBTAIL_PERM_LAW_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "zbtail/cycle_type.hpp"
#include "zbtail/permutation.hpp"
#include "zbtail/rng.hpp"

namespace zbtail {

enum class LawKind {
  uniform,          // uniform over all permutations of {1..n}
  fpf_involution,   // uniform over fixed-point-free involutions (even n)
  cycle_type,       // uniform over the permutations of one cycle type
  mixture,          // cycle-type mixture: pick a type by weight, then uniform
};

std::string to_string(LawKind kind);

// A permutation distribution that is constant on conjugacy classes. Uniform
// and fixed-point-free-involution laws are the common cases; cycle_type and
// mixture cover the general class-constant family.
class PermLaw {
 public:
  using WeightedType = std::pair<CycleType, double>;

  static PermLaw uniform(std::size_t n);
  static PermLaw fpf_involution(std::size_t n);  // n even, n >= 2
  static PermLaw cycle_type(CycleType type);
  // Weights must be non-negative and sum to 1 within 1e-9; all types must
  // share the same n.
  static PermLaw mixture(std::vector<WeightedType> components);

  LawKind kind() const { return kind_; }
  std::size_t n() const { return n_; }

  // For kind() == cycle_type.
  const CycleType& type() const;
  // For kind() == mixture.
  const std::vector<WeightedType>& components() const;

  // True iff no possible draw has a fixed point.
  bool fixed_point_free() const;

  Permutation sample(Rng& rng) const;

  std::string describe() const;

  static constexpr double kWeightSumTol = 1e-9;

 private:
  PermLaw(LawKind kind, std::size_t n) : kind_(kind), n_(n) {}

  LawKind kind_;
  std::size_t n_;
  std::vector<WeightedType> components_;  // cycle_type: single unit weight
};

// Stand-alone samplers, also used by PermLaw::sample.
Permutation sample_uniform_permutation(std::size_t n, Rng& rng);
Permutation sample_fpf_involution(std::size_t n, Rng& rng);
Permutation sample_cycle_type(const CycleType& type, Rng& rng);

}  // namespace zbtail

#endif  // ZBTAIL_PERM_LAW_HPP_
