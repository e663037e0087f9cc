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

#include "zbtail/zero_bias.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zbtail {

PiecewiseDensity zero_bias_transform(const DiscreteDist& dist,
                                     double tol_mean) {
  if (dist.size() < 2) {
    throw std::domain_error(
        "zero-bias transform needs at least two atoms (variance > 0)");
  }
  if (!dist.is_mean_zero(tol_mean)) {
    throw std::domain_error("zero-bias transform requires a mean-zero input");
  }
  const auto& atoms = dist.atoms();
  const std::size_t k = atoms.size();
  // Segment j spans (value_j, value_{j+1}) and carries the constant value
  // g_j = sum_{i > j} p_i v_i = E[Y 1{Y > y}] there. For a mean-zero input
  // every g_j is strictly positive between the extreme atoms.
  std::vector<double> g(k - 1, 0.0);
  double suffix = 0.0;
  for (std::size_t j = k - 1; j >= 1; --j) {
    suffix += atoms[j].second * atoms[j].first;
    g[j - 1] = std::max(suffix, 0.0);
  }
  std::vector<double> breaks(k);
  for (std::size_t j = 0; j < k; ++j) {
    breaks[j] = atoms[j].first;
  }
  // The exact integral of g equals the variance; normalizing by the computed
  // sum (rather than a separately computed variance) makes the density
  // integrate to 1 to the last bit.
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    total += g[j] * (breaks[j + 1] - breaks[j]);
  }
  if (!(total > 0)) {
    throw std::domain_error("zero-bias transform requires variance > 0");
  }
  std::vector<double> densities(k - 1);
  for (std::size_t j = 0; j + 1 < k; ++j) {
    densities[j] = g[j] / total;
  }
  return PiecewiseDensity(std::move(breaks), std::move(densities));
}

SumCoupler::SumCoupler(std::vector<DiscreteDist> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::domain_error("coupling needs at least one component");
  }
  for (const auto& component : components_) {
    // zero_bias_transform re-validates mean and variance per component.
    zero_biased_.push_back(zero_bias_transform(component));
    const double variance = component.variance();
    total_variance_ += variance;
    variance_cum_.push_back(total_variance_);
    coupling_bound_ = std::max(coupling_bound_, 2.0 * component.sup_abs());
  }
}

CouplingSample SumCoupler::draw(Rng& rng) const {
  // Fixed draw order -- components, index, replacement -- so a given
  // generator state always yields the same sample.
  CouplingSample out;
  std::vector<double> x(components_.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    x[i] = components_[i].sample(rng);
    sum += x[i];
  }
  const double target = rng.unit() * total_variance_;
  const std::size_t index =
      std::min<std::size_t>(std::upper_bound(variance_cum_.begin(),
                                             variance_cum_.end(), target) -
                                variance_cum_.begin(),
                            components_.size() - 1);
  const double replacement = zero_biased_[index].sample(rng);
  out.y = sum;
  out.y_star = sum - x[index] + replacement;
  out.replaced = index;
  return out;
}

}  // namespace zbtail
