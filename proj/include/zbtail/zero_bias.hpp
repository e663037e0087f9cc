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

#ifndef ZBTAIL_ZERO_BIAS_HPP_
#define ZBTAIL_ZERO_BIAS_HPP_

#include <cstddef>
#include <vector>

#include "zbtail/discrete_dist.hpp"
#include "zbtail/piecewise_density.hpp"
#include "zbtail/rng.hpp"

namespace zbtail {

// Zero-bias distribution of a mean-zero discrete Y with variance s2 > 0:
// density d*(y) = E[Y 1{Y > y}] / s2, piecewise constant between atoms of Y
// and supported on [min Y, max Y]. Throws std::domain_error if the mean is
// not zero within tol_mean or the variance vanishes.
PiecewiseDensity zero_bias_transform(const DiscreteDist& dist,
                                     double tol_mean = DiscreteDist::kMeanZeroTol);

// One draw (Y, Y*) from the square-bias coupling for Y = sum_i X_i with the
// X_i independent and mean zero. An index I is chosen with probability
// var(X_i)/var(Y); coordinate I is replaced by an independent draw from the
// zero-bias distribution of X_I, the rest are shared. |Y* - Y| never exceeds
// 2 max_i sup|X_i|.
struct CouplingSample {
  double y = 0.0;          // sum with all coordinates from the base laws
  double y_star = 0.0;     // sum with coordinate `replaced` zero-biased
  std::size_t replaced = 0;
};

class SumCoupler {
 public:
  // Components must each be mean zero; at least one must have positive
  // variance. Throws std::domain_error otherwise.
  explicit SumCoupler(std::vector<DiscreteDist> components);

  CouplingSample draw(Rng& rng) const;

  std::size_t size() const { return components_.size(); }
  const DiscreteDist& component(std::size_t i) const { return components_[i]; }
  double total_variance() const { return total_variance_; }

  // 2 max_i sup|X_i|: an almost-sure bound on |Y* - Y| for this coupling.
  double coupling_bound() const { return coupling_bound_; }

 private:
  std::vector<DiscreteDist> components_;
  std::vector<PiecewiseDensity> zero_biased_;
  std::vector<double> variance_cum_;  // cumulative variances, for index choice
  double total_variance_ = 0.0;
  double coupling_bound_ = 0.0;
};

}  // namespace zbtail

#endif  // ZBTAIL_ZERO_BIAS_HPP_
