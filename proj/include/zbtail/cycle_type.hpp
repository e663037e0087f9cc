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

#ifndef ZBTAIL_CYCLE_TYPE_HPP_
#define ZBTAIL_CYCLE_TYPE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "zbtail/permutation.hpp"

namespace zbtail {

// Cycle type of a permutation of {1..n}: counts[q-1] is the number of
// q-cycles, with sum_q q * counts[q-1] == counts.size() == n.
class CycleType {
 public:
  explicit CycleType(std::vector<std::size_t> counts);

  std::size_t n() const { return counts_.size(); }
  const std::vector<std::size_t>& counts() const { return counts_; }
  // Number of q-cycles, 1 <= q <= n.
  std::size_t count(std::size_t q) const { return counts_[q - 1]; }

  std::size_t fixed_points() const { return counts_[0]; }
  std::size_t two_cycles() const { return n() >= 2 ? counts_[1] : 0; }
  bool fixed_point_free() const { return fixed_points() == 0; }
  // All cycles of length two: the type of a fixed-point-free involution.
  bool is_involution_type() const;
  // No fixed points and no two-cycles: every cycle has length >= 3.
  bool has_only_long_cycles() const;

  // Cycle lengths in non-decreasing order, e.g. (0,2,0,1) -> {2,2,3}... for
  // the canonical block construction used by the sampler.
  std::vector<std::size_t> lengths() const;

  // Number of permutations with this cycle type: n! / prod_q(q^f_q * f_q!).
  // Exact in 64 bits for n <= 20; larger n throws ResourceLimitError.
  std::uint64_t class_size() const;

  bool operator==(const CycleType& other) const {
    return counts_ == other.counts_;
  }

 private:
  std::vector<std::size_t> counts_;
};

// Cycle type of a permutation.
CycleType cycle_type_of(const Permutation& perm);

// All cycle types on n elements (the integer partitions of n), in a fixed
// deterministic order: lexicographic by counts vector, descending.
std::vector<CycleType> enumerate_cycle_types(std::size_t n);

}  // namespace zbtail

#endif  // ZBTAIL_CYCLE_TYPE_HPP_
