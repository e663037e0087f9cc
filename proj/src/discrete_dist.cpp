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

#include "zbtail/discrete_dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zbtail/errors.hpp"

namespace zbtail {
namespace {

constexpr double kMergeTol = 1e-12;

}  // namespace

DiscreteDist::DiscreteDist(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw std::domain_error("distribution needs at least one atom");
  }
  std::sort(atoms_.begin(), atoms_.end());
  double sum = 0.0;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const auto& [value, prob] = atoms_[k];
    if (!std::isfinite(value)) {
      throw std::domain_error("atom values must be finite");
    }
    if (!std::isfinite(prob) || prob <= 0) {
      throw std::domain_error("atom probabilities must be finite and > 0");
    }
    if (k > 0 && value <= atoms_[k - 1].first) {
      throw std::domain_error("atom values must be distinct");
    }
    sum += prob;
    cum_.push_back(sum);
  }
  if (std::abs(sum - 1.0) > kProbSumTol) {
    throw std::domain_error("atom probabilities must sum to 1");
  }
}

double DiscreteDist::sup_abs() const {
  return std::max(std::abs(min_value()), std::abs(max_value()));
}

Moments DiscreteDist::moments() const {
  Moments m;
  for (const auto& [value, prob] : atoms_) {
    m.mean += prob * value;
    m.third_moment += prob * value * value * value;
  }
  for (const auto& [value, prob] : atoms_) {
    const double d = value - m.mean;
    m.variance += prob * d * d;
  }
  return m;
}

double DiscreteDist::mgf(double s) const {
  double total = 0.0;
  for (const auto& [value, prob] : atoms_) {
    total += prob * std::exp(s * value);
  }
  return total;
}

double DiscreteDist::mgf_deriv(double s) const {
  double total = 0.0;
  for (const auto& [value, prob] : atoms_) {
    total += prob * value * std::exp(s * value);
  }
  return total;
}

bool DiscreteDist::is_mean_zero(double tol) const {
  return std::abs(moments().mean) <= tol;
}

DiscreteDist DiscreteDist::centered() const {
  const double mean = moments().mean;
  std::vector<Atom> shifted = atoms_;
  for (auto& [value, prob] : shifted) {
    value -= mean;
  }
  return DiscreteDist(std::move(shifted));
}

DiscreteDist DiscreteDist::scaled(double a) const {
  if (!std::isfinite(a) || a == 0) {
    throw std::domain_error("scale factor must be finite and nonzero");
  }
  std::vector<Atom> mapped = atoms_;
  for (auto& [value, prob] : mapped) {
    value *= a;
  }
  return DiscreteDist(std::move(mapped));
}

double DiscreteDist::sample(Rng& rng) const {
  const double u = rng.unit();
  auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  const std::size_t k =
      std::min<std::size_t>(it - cum_.begin(), atoms_.size() - 1);
  return atoms_[k].first;
}

DiscreteDist convolve(const std::vector<DiscreteDist>& components,
                      std::size_t support_cap) {
  if (components.empty()) {
    throw std::domain_error("convolution needs at least one component");
  }
  std::vector<DiscreteDist::Atom> acc = components.front().atoms();
  for (std::size_t i = 1; i < components.size(); ++i) {
    const auto& next = components[i].atoms();
    if (acc.size() * next.size() > support_cap) {
      throw ResourceLimitError("convolution support would exceed cap");
    }
    std::vector<DiscreteDist::Atom> pairs;
    pairs.reserve(acc.size() * next.size());
    for (const auto& [v, p] : acc) {
      for (const auto& [w, q] : next) {
        pairs.emplace_back(v + w, p * q);
      }
    }
    std::sort(pairs.begin(), pairs.end());
    // Collapse runs of values within the merge tolerance into single atoms
    // at their probability-weighted mean.
    std::vector<DiscreteDist::Atom> merged;
    std::size_t start = 0;
    while (start < pairs.size()) {
      std::size_t end = start + 1;
      while (end < pairs.size() &&
             pairs[end].first - pairs[end - 1].first <= kMergeTol) {
        ++end;
      }
      double prob = 0.0;
      double weighted = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        prob += pairs[k].second;
        weighted += pairs[k].second * pairs[k].first;
      }
      merged.emplace_back(weighted / prob, prob);
      start = end;
    }
    acc = std::move(merged);
  }
  // Rounding in the pairwise products can leave the total a few ulps off 1;
  // rescale so the constructor's exact-sum check stays meaningful.
  double sum = 0.0;
  for (const auto& [v, p] : acc) {
    sum += p;
  }
  for (auto& [v, p] : acc) {
    p /= sum;
  }
  return DiscreteDist(std::move(acc));
}

}  // namespace zbtail
