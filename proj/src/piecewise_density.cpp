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

#include "zbtail/piecewise_density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zbtail {

PiecewiseDensity::PiecewiseDensity(std::vector<double> breakpoints,
                                   std::vector<double> densities)
    : breaks_(std::move(breakpoints)), dens_(std::move(densities)) {
  if (breaks_.size() < 2 || dens_.size() != breaks_.size() - 1) {
    throw std::domain_error(
        "density needs k+1 breakpoints for k >= 1 segments");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < dens_.size(); ++j) {
    if (!std::isfinite(breaks_[j]) || !std::isfinite(breaks_[j + 1])) {
      throw std::domain_error("breakpoints must be finite");
    }
    if (breaks_[j + 1] <= breaks_[j]) {
      throw std::domain_error("breakpoints must be strictly increasing");
    }
    if (!std::isfinite(dens_[j]) || dens_[j] < 0) {
      throw std::domain_error("densities must be finite and >= 0");
    }
    total += dens_[j] * (breaks_[j + 1] - breaks_[j]);
    cum_.push_back(total);
  }
  if (std::abs(total - 1.0) > kMassTol) {
    throw std::domain_error("density must integrate to 1");
  }
}

double PiecewiseDensity::density_at(double x) const {
  if (x < breaks_.front() || x > breaks_.back()) {
    return 0.0;
  }
  if (x == breaks_.back()) {
    return dens_.back();
  }
  const std::size_t j =
      std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin();
  return dens_[j == 0 ? 0 : j - 1];
}

double PiecewiseDensity::cdf(double x) const {
  if (x <= breaks_.front()) {
    return 0.0;
  }
  if (x >= breaks_.back()) {
    return cum_.back();
  }
  const std::size_t j =
      std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin() - 1;
  const double before = j == 0 ? 0.0 : cum_[j - 1];
  return before + dens_[j] * (x - breaks_[j]);
}

double PiecewiseDensity::quantile(double u) const {
  if (!std::isfinite(u) || u < 0 || u > 1) {
    throw std::domain_error("quantile argument must lie in [0, 1]");
  }
  const double target = u * cum_.back();
  const std::size_t j =
      std::lower_bound(cum_.begin(), cum_.end(), target) - cum_.begin();
  if (j >= dens_.size()) {
    return breaks_.back();
  }
  const double before = j == 0 ? 0.0 : cum_[j - 1];
  if (dens_[j] <= 0) {
    return breaks_[j];
  }
  const double x = breaks_[j] + (target - before) / dens_[j];
  return std::min(x, breaks_[j + 1]);
}

double PiecewiseDensity::moment(int m) const {
  if (m < 0) {
    throw std::domain_error("moment order must be >= 0");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < dens_.size(); ++j) {
    const double hi = std::pow(breaks_[j + 1], m + 1);
    const double lo = std::pow(breaks_[j], m + 1);
    total += dens_[j] * (hi - lo) / (m + 1);
  }
  return total;
}

double PiecewiseDensity::mgf(double s) const {
  if (s == 0) {
    return cum_.back();
  }
  double total = 0.0;
  for (std::size_t j = 0; j < dens_.size(); ++j) {
    const double dx = breaks_[j + 1] - breaks_[j];
    total += dens_[j] * std::exp(s * breaks_[j]) * std::expm1(s * dx) / s;
  }
  return total;
}

PiecewiseDensity PiecewiseDensity::scaled(double a) const {
  if (!std::isfinite(a) || a == 0) {
    throw std::domain_error("scale factor must be finite and nonzero");
  }
  std::vector<double> breaks(breaks_.size());
  std::vector<double> dens(dens_.size());
  if (a > 0) {
    for (std::size_t j = 0; j < breaks_.size(); ++j) {
      breaks[j] = breaks_[j] * a;
    }
    for (std::size_t j = 0; j < dens_.size(); ++j) {
      dens[j] = dens_[j] / a;
    }
  } else {
    for (std::size_t j = 0; j < breaks_.size(); ++j) {
      breaks[j] = breaks_[breaks_.size() - 1 - j] * a;
    }
    for (std::size_t j = 0; j < dens_.size(); ++j) {
      dens[j] = dens_[dens_.size() - 1 - j] / -a;
    }
  }
  return PiecewiseDensity(std::move(breaks), std::move(dens));
}

}  // namespace zbtail
