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

#ifndef ZBTAIL_PIECEWISE_DENSITY_HPP_
#define ZBTAIL_PIECEWISE_DENSITY_HPP_

#include <cstddef>
#include <vector>

#include "zbtail/rng.hpp"

namespace zbtail {

// Piecewise-constant probability density on a compact interval:
// density = densities[j] on (breakpoints[j], breakpoints[j+1]). Breakpoints
// are strictly increasing, densities non-negative, total mass 1 within 1e-12.
class PiecewiseDensity {
 public:
  PiecewiseDensity(std::vector<double> breakpoints,
                   std::vector<double> densities);

  const std::vector<double>& breakpoints() const { return breaks_; }
  const std::vector<double>& densities() const { return dens_; }
  std::size_t segments() const { return dens_.size(); }
  double min_support() const { return breaks_.front(); }
  double max_support() const { return breaks_.back(); }

  double density_at(double x) const;
  double cdf(double x) const;

  // Inverse CDF; u in [0, 1]. The CDF is piecewise linear and inverted in
  // closed form on the containing segment.
  double quantile(double u) const;
  double sample(Rng& rng) const { return quantile(rng.unit()); }

  // E[X^m] by exact segment integrals, m >= 0.
  double moment(int m) const;

  // E[e^{sX}]; each segment contributes d_j e^{s b_j} expm1(s dx)/s, with the
  // s = 0 limit handled analytically.
  double mgf(double s) const;

  // Density of a*X; a must be nonzero.
  PiecewiseDensity scaled(double a) const;

  static constexpr double kMassTol = 1e-12;

 private:
  std::vector<double> breaks_;
  std::vector<double> dens_;
  std::vector<double> cum_;  // cumulative segment masses
};

}  // namespace zbtail

#endif  // ZBTAIL_PIECEWISE_DENSITY_HPP_
