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

#ifndef ZBTAIL_DISCRETE_DIST_HPP_
#define ZBTAIL_DISCRETE_DIST_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "zbtail/rng.hpp"

namespace zbtail {

struct Moments {
  double mean = 0;
  double variance = 0;
  double third_moment = 0;  // raw E[Y^3]
};

// Finite atomic distribution. The constructor sorts atoms by value and
// requires strictly increasing values, strictly positive probabilities, and
// a probability sum within kProbSumTol of one.
class DiscreteDist {
 public:
  using Atom = std::pair<double, double>;  // (value, probability)

  explicit DiscreteDist(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double min_value() const { return atoms_.front().first; }
  double max_value() const { return atoms_.back().first; }
  double prob_at_max() const { return atoms_.back().second; }
  double sup_abs() const;  // max_k |value_k|

  Moments moments() const;
  double mean() const { return moments().mean; }
  double variance() const { return moments().variance; }

  double mgf(double s) const;        // E[e^{sY}]
  double mgf_deriv(double s) const;  // E[Y e^{sY}]

  bool is_mean_zero(double tol = kMeanZeroTol) const;

  // Exact mean subtraction; the result is mean zero up to rounding.
  DiscreteDist centered() const;

  // Law of a*Y; a must be nonzero.
  DiscreteDist scaled(double a) const;

  double sample(Rng& rng) const;

  static constexpr double kMeanZeroTol = 1e-10;
  static constexpr double kProbSumTol = 1e-12;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cum_;  // cumulative probabilities
};

// Exact law of the independent sum. Throws ResourceLimitError when the
// product of support sizes exceeds `support_cap`. Atom values closer than
// 1e-12 are merged (probability-weighted) to absorb floating-point
// near-duplicates.
DiscreteDist convolve(const std::vector<DiscreteDist>& components,
                      std::size_t support_cap = 1000000);

}  // namespace zbtail

#endif  // ZBTAIL_DISCRETE_DIST_HPP_
