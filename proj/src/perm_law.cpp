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

#include "zbtail/perm_law.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace zbtail {

std::string to_string(LawKind kind) {
  switch (kind) {
    case LawKind::uniform:
      return "uniform";
    case LawKind::fpf_involution:
      return "fpf-involution";
    case LawKind::cycle_type:
      return "cycle-type";
    case LawKind::mixture:
      return "mixture";
  }
  return "unknown";
}

PermLaw PermLaw::uniform(std::size_t n) {
  if (n == 0) {
    throw std::domain_error("uniform law needs n >= 1");
  }
  return PermLaw(LawKind::uniform, n);
}

PermLaw PermLaw::fpf_involution(std::size_t n) {
  if (n < 2 || n % 2 != 0) {
    throw std::domain_error("fixed-point-free involutions need even n >= 2");
  }
  return PermLaw(LawKind::fpf_involution, n);
}

PermLaw PermLaw::cycle_type(CycleType type) {
  PermLaw law(LawKind::cycle_type, type.n());
  law.components_.emplace_back(std::move(type), 1.0);
  return law;
}

PermLaw PermLaw::mixture(std::vector<WeightedType> components) {
  if (components.empty()) {
    throw std::domain_error("mixture needs at least one component");
  }
  const std::size_t n = components.front().first.n();
  double sum = 0.0;
  for (const auto& [type, weight] : components) {
    if (type.n() != n) {
      throw std::domain_error("mixture components must share one n");
    }
    if (!std::isfinite(weight) || weight < 0) {
      throw std::domain_error("mixture weights must be finite and >= 0");
    }
    sum += weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw std::domain_error("mixture weights must sum to 1");
  }
  PermLaw law(LawKind::mixture, n);
  law.components_ = std::move(components);
  return law;
}

const CycleType& PermLaw::type() const {
  if (kind_ != LawKind::cycle_type) {
    throw std::domain_error("law has no single cycle type");
  }
  return components_.front().first;
}

const std::vector<PermLaw::WeightedType>& PermLaw::components() const {
  if (kind_ != LawKind::mixture && kind_ != LawKind::cycle_type) {
    throw std::domain_error("law has no cycle-type components");
  }
  return components_;
}

bool PermLaw::fixed_point_free() const {
  switch (kind_) {
    case LawKind::uniform:
      return false;
    case LawKind::fpf_involution:
      return true;
    case LawKind::cycle_type:
    case LawKind::mixture:
      for (const auto& [type, weight] : components_) {
        if (weight > 0 && !type.fixed_point_free()) {
          return false;
        }
      }
      return true;
  }
  return false;
}

Permutation PermLaw::sample(Rng& rng) const {
  switch (kind_) {
    case LawKind::uniform:
      return sample_uniform_permutation(n_, rng);
    case LawKind::fpf_involution:
      return sample_fpf_involution(n_, rng);
    case LawKind::cycle_type:
      return sample_cycle_type(components_.front().first, rng);
    case LawKind::mixture: {
      const double u = rng.unit();
      double cum = 0.0;
      for (const auto& [type, weight] : components_) {
        cum += weight;
        if (u < cum) {
          return sample_cycle_type(type, rng);
        }
      }
      return sample_cycle_type(components_.back().first, rng);
    }
  }
  throw std::logic_error("unknown law kind");
}

std::string PermLaw::describe() const {
  switch (kind_) {
    case LawKind::uniform:
      return "uniform permutations, n=" + std::to_string(n_);
    case LawKind::fpf_involution:
      return "fixed-point-free involutions, n=" + std::to_string(n_);
    case LawKind::cycle_type: {
      std::string out = "uniform on cycle type [";
      const auto& counts = components_.front().first.counts();
      for (std::size_t q = 0; q < counts.size(); ++q) {
        out += (q ? "," : "") + std::to_string(counts[q]);
      }
      return out + "]";
    }
    case LawKind::mixture:
      return "mixture of " + std::to_string(components_.size()) +
             " cycle types, n=" + std::to_string(n_);
  }
  return "unknown law";
}

Permutation sample_uniform_permutation(std::size_t n, Rng& rng) {
  Permutation perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.below(i)]);
  }
  return perm;
}

Permutation sample_fpf_involution(std::size_t n, Rng& rng) {
  if (n < 2 || n % 2 != 0) {
    throw std::domain_error("fixed-point-free involutions need even n >= 2");
  }
  // Match the smallest unmatched index with a uniformly chosen other
  // unmatched index. Every perfect matching arises in exactly one way, so
  // the draw is uniform over all (n-1)!! of them.
  Permutation perm(n);
  std::vector<std::size_t> unmatched(n);
  std::iota(unmatched.begin(), unmatched.end(), 0);
  while (!unmatched.empty()) {
    const std::size_t i = unmatched.front();
    const std::size_t pick = 1 + rng.below(unmatched.size() - 1);
    const std::size_t j = unmatched[pick];
    perm[i] = j;
    perm[j] = i;
    unmatched.erase(unmatched.begin() + pick);
    unmatched.erase(unmatched.begin());
  }
  return perm;
}

Permutation sample_cycle_type(const CycleType& type, Rng& rng) {
  // Cut a uniform arrangement into consecutive blocks of the canonical
  // (non-decreasing) cycle lengths and close each block into a cycle. Every
  // permutation of this type corresponds to exactly prod_q q^f_q f_q!
  // arrangements, so the result is uniform over the class.
  const std::size_t n = type.n();
  const Permutation arrangement = sample_uniform_permutation(n, rng);
  Permutation perm(n);
  std::size_t offset = 0;
  for (std::size_t length : type.lengths()) {
    for (std::size_t k = 0; k < length; ++k) {
      perm[arrangement[offset + k]] = arrangement[offset + (k + 1) % length];
    }
    offset += length;
  }
  return perm;
}

}  // namespace zbtail
