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

#include "zbtail/cycle_type.hpp"

#include <algorithm>
#include <stdexcept>

#include "zbtail/errors.hpp"

namespace zbtail {

CycleType::CycleType(std::vector<std::size_t> counts)
    : counts_(std::move(counts)) {
  if (counts_.empty()) {
    throw std::domain_error("cycle type must have at least one entry");
  }
  std::size_t weighted = 0;
  for (std::size_t q = 1; q <= counts_.size(); ++q) {
    weighted += q * counts_[q - 1];
  }
  if (weighted != counts_.size()) {
    throw std::domain_error(
        "cycle counts must satisfy sum_q q * f_q = n (= the vector length)");
  }
}

bool CycleType::is_involution_type() const {
  return fixed_point_free() && n() >= 2 && 2 * counts_[1] == n();
}

bool CycleType::has_only_long_cycles() const {
  return fixed_point_free() && (n() < 2 || counts_[1] == 0);
}

std::vector<std::size_t> CycleType::lengths() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 1; q <= counts_.size(); ++q) {
    out.insert(out.end(), counts_[q - 1], q);
  }
  return out;
}

std::uint64_t CycleType::class_size() const {
  if (n() > 20) {
    throw ResourceLimitError("exact class size only available for n <= 20");
  }
  std::uint64_t factorial = 1;
  for (std::size_t i = 2; i <= n(); ++i) {
    factorial *= i;
  }
  std::uint64_t denom = 1;
  for (std::size_t q = 1; q <= counts_.size(); ++q) {
    for (std::size_t r = 0; r < counts_[q - 1]; ++r) {
      denom *= q;          // q^f_q
      denom *= (r + 1);    // f_q!
    }
  }
  return factorial / denom;
}

CycleType cycle_type_of(const Permutation& perm) {
  if (!is_permutation(perm)) {
    throw std::domain_error("cycle type needs a valid permutation");
  }
  const std::size_t n = perm.size();
  std::vector<std::size_t> counts(n, 0);
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) {
      continue;
    }
    std::size_t length = 0;
    for (std::size_t i = start; !seen[i]; i = perm[i]) {
      seen[i] = true;
      ++length;
    }
    ++counts[length - 1];
  }
  return CycleType(std::move(counts));
}

namespace {

void partitions_rec(std::size_t remaining, std::size_t max_part,
                    std::vector<std::size_t>& counts, std::size_t n,
                    std::vector<CycleType>& out) {
  if (remaining == 0) {
    out.emplace_back(counts);
    return;
  }
  for (std::size_t q = std::min(remaining, max_part); q >= 1; --q) {
    counts[q - 1] += 1;
    partitions_rec(remaining - q, q, counts, n, out);
    counts[q - 1] -= 1;
  }
}

}  // namespace

std::vector<CycleType> enumerate_cycle_types(std::size_t n) {
  if (n == 0) {
    throw std::domain_error("cycle types need n >= 1");
  }
  std::vector<CycleType> out;
  std::vector<std::size_t> counts(n, 0);
  partitions_rec(n, n, counts, n, out);
  std::sort(out.begin(), out.end(), [](const CycleType& a, const CycleType& b) {
    return a.counts() > b.counts();
  });
  return out;
}

}  // namespace zbtail
