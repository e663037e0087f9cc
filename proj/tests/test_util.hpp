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

#ifndef ZBTAIL_TESTS_TEST_UTIL_HPP_
#define ZBTAIL_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "zbtail/discrete_dist.hpp"
#include "zbtail/matrix.hpp"
#include "zbtail/permutation.hpp"
#include "zbtail/rng.hpp"

namespace zbtail_test {

// True when a and b agree to `tol` relative to the larger magnitude, with an
// absolute floor of `tol` for values that both sit near zero.
inline bool rel_close(double a, double b, double tol) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

// Strict relative comparison (no absolute floor) for values known to be away
// from zero.
inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// Random mean-zero distribution with `min_atoms`..`max_atoms` support points
// in roughly [-3, 3], pairwise gaps >= 1e-3, every probability >= ~0.02, and
// variance >= 1e-4. Centering is exact up to rounding.
inline zbtail::DiscreteDist random_mean_zero_dist(zbtail::Rng& rng,
                                                  std::size_t min_atoms = 2,
                                                  std::size_t max_atoms = 6) {
  for (;;) {
    const std::size_t k =
        min_atoms + rng.below(max_atoms - min_atoms + 1);
    std::vector<double> values;
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      for (int attempt = 0;; ++attempt) {
        if (attempt > 200) {
          ok = false;
          break;
        }
        const double v = rng.unit() * 6.0 - 3.0;
        bool distinct = true;
        for (double existing : values) {
          if (std::abs(existing - v) < 1e-3) {
            distinct = false;
            break;
          }
        }
        if (distinct) {
          values.push_back(v);
          break;
        }
      }
    }
    if (!ok) {
      continue;
    }
    std::vector<double> probs(k);
    double total = 0.0;
    for (double& p : probs) {
      p = -std::log(rng.unit()) + 0.1;  // floor keeps atoms non-negligible
      total += p;
    }
    std::vector<zbtail::DiscreteDist::Atom> atoms;
    atoms.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      atoms.emplace_back(values[i], probs[i] / total);
    }
    const zbtail::DiscreteDist centered =
        zbtail::DiscreteDist(std::move(atoms)).centered();
    if (centered.variance() >= 1e-4) {
      return centered;
    }
  }
}

inline zbtail::SquareMatrix random_matrix(zbtail::Rng& rng, std::size_t n,
                                          double lo = 0.0, double hi = 1.0) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (auto& row : rows) {
    for (double& entry : row) {
      entry = lo + (hi - lo) * rng.unit();
    }
  }
  return zbtail::SquareMatrix(std::move(rows));
}

inline zbtail::SquareMatrix random_symmetric_matrix(zbtail::Rng& rng,
                                                    std::size_t n,
                                                    double lo = 0.0,
                                                    double hi = 1.0) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double entry = lo + (hi - lo) * rng.unit();
      rows[i][j] = entry;
      rows[j][i] = entry;
    }
  }
  return zbtail::SquareMatrix(std::move(rows));
}

// The classic 3x3 cyclic matrix: rows (0,1,2), (1,2,0), (2,0,1). Under the
// uniform law the statistic has mean 3, variance 3, centered sup norm 1, and
// P(Y - mu >= 3) = 1/6.
inline zbtail::SquareMatrix cyclic3() {
  return zbtail::SquareMatrix({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
}

// Upper chi-square tail p-value for observed counts against expected
// probabilities: dof = #cells - 1.
inline double chi_square_pvalue(const std::vector<std::uint64_t>& observed,
                                const std::vector<double>& expected_probs,
                                std::uint64_t trials) {
  double x2 = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = expected_probs[i] * static_cast<double>(trials);
    const double diff = static_cast<double>(observed[i]) - expected;
    x2 += diff * diff / expected;
  }
  const double dof = static_cast<double>(observed.size()) - 1.0;
  return boost::math::gamma_q(dof / 2.0, x2 / 2.0);
}

inline std::string key_of(const zbtail::Permutation& p) {
  std::string key;
  for (std::size_t v : p) {
    key += std::to_string(v);
    key += ',';
  }
  return key;
}

// Sup distance between the empirical CDF of `samples` (sorted in place) and
// a continuous CDF.
template <typename Cdf>
double ecdf_sup_distance(std::vector<double>& samples, const Cdf& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    sup = std::max(sup, std::abs((i + 1) / n - f));
    sup = std::max(sup, std::abs(i / n - f));
  }
  return sup;
}

}  // namespace zbtail_test

#endif  // ZBTAIL_TESTS_TEST_UTIL_HPP_
