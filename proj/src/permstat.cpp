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

#include "zbtail/permstat.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace zbtail {
namespace {

constexpr double kFormTol = 1e-9;  // agreement of the two variance forms

void require_symmetric(const SquareMatrix& a, const char* what) {
  if (!a.is_symmetric()) {
    throw std::domain_error(std::string(what) +
                            " requires a symmetric matrix");
  }
}

void require_n_at_least(const SquareMatrix& a, std::size_t n,
                        const char* what) {
  if (a.n() < n) {
    throw std::domain_error(std::string(what) + " requires n >= " +
                            std::to_string(n));
  }
}

// Variance coefficient for one fixed-point-free cycle type:
// 1/(n-1) + 2 f_2 / (n (n-3)).
double cycle_type_coefficient(std::size_t n, std::size_t two_cycles) {
  return 1.0 / static_cast<double>(n - 1) +
         2.0 * static_cast<double>(two_cycles) /
             (static_cast<double>(n) * static_cast<double>(n - 3));
}

void check_cycle_type_inputs(const SquareMatrix& a, const CycleType& f,
                             const char* what) {
  if (f.n() != a.n()) {
    throw std::domain_error(std::string(what) +
                            ": cycle type size must match the matrix");
  }
  require_symmetric(a, what);
  require_n_at_least(a, 4, what);
  if (!f.fixed_point_free()) {
    throw std::domain_error(std::string(what) +
                            " requires a fixed-point-free cycle type");
  }
}

}  // namespace

double hoeffding_stat(const SquareMatrix& a, const Permutation& p) {
  if (p.size() != a.n()) {
    throw std::domain_error("permutation size must match the matrix");
  }
  if (!is_permutation(p)) {
    throw std::domain_error("images must form a permutation");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += a.at(i, p[i]);
  }
  return sum;
}

LawMoments moments_uniform(const SquareMatrix& a) {
  const std::size_t n = a.n();
  double centered = 0.0;
  double moment = 0.0;
  double gross = 0.0;
  const double g = a.grand_mean();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double entry = a.at(i, j);
      const double r = a.row_mean(i);
      const double c = a.col_mean(j);
      const double d = entry - r - c + g;
      centered += d * d;
      moment += entry * entry - r * r - c * c + g * g;
      gross += entry * entry + r * r + c * c + g * g;
    }
  }
  centered /= static_cast<double>(n - 1);
  moment /= static_cast<double>(n - 1);
  gross /= static_cast<double>(n - 1);
  // The second form cancels squares of the matrix scale, so for a (near-)
  // constant matrix both forms land in its rounding residue. Below that
  // floor the variance is zero to working precision; above it the two forms
  // must agree or the matrix scale has defeated double precision.
  const double noise_floor = std::numeric_limits<double>::epsilon() *
                             static_cast<double>(n) * static_cast<double>(n) *
                             gross;
  const double scale = std::max(std::abs(centered), std::abs(moment));
  LawMoments out;
  out.mean = static_cast<double>(n) * g;
  if (scale <= noise_floor) {
    out.variance = 0.0;
    return out;
  }
  if (std::abs(centered - moment) > kFormTol * scale) {
    throw std::logic_error(
        "variance forms disagree; the matrix scale defeats double precision");
  }
  out.variance = centered;
  return out;
}

double sup_norm_centered(const SquareMatrix& a) {
  double sup = 0.0;
  for (std::size_t i = 0; i < a.n(); ++i) {
    for (std::size_t j = 0; j < a.n(); ++j) {
      sup = std::max(sup, std::abs(a.at(i, j) - a.row_mean(i)));
    }
  }
  return sup;
}

std::vector<std::vector<double>> centered_offdiag(const SquareMatrix& a) {
  const std::size_t n = a.n();
  const double g = a.offdiag_grand_mean();
  std::vector<std::vector<double>> h(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) {
        continue;
      }
      h[i][j] =
          a.at(i, j) - a.offdiag_row_mean(i) - a.offdiag_row_mean(j) + g;
    }
  }
  return h;
}

double sup_norm_centered_offdiag(const SquareMatrix& a) {
  double sup = 0.0;
  for (const auto& row : centered_offdiag(a)) {
    for (double entry : row) {
      sup = std::max(sup, std::abs(entry));
    }
  }
  return sup;
}

double centered_offdiag_sum_squares(const SquareMatrix& a) {
  double sum = 0.0;
  for (const auto& row : centered_offdiag(a)) {
    for (double entry : row) {
      sum += entry * entry;
    }
  }
  return sum;
}

LawMoments moments_cycle_type(const SquareMatrix& a, const CycleType& f) {
  check_cycle_type_inputs(a, f, "cycle-type moments");
  LawMoments out;
  out.mean = static_cast<double>(a.n() - 2) * a.offdiag_grand_mean();
  out.variance = cycle_type_coefficient(a.n(), f.two_cycles()) *
                 centered_offdiag_sum_squares(a);
  return out;
}

double variance_involution(const SquareMatrix& a) {
  require_symmetric(a, "involution variance");
  require_n_at_least(a, 4, "involution variance");
  const auto n = static_cast<double>(a.n());
  if (a.n() % 2 != 0) {
    throw std::domain_error("involution variance requires even n");
  }
  return 2.0 * (n - 2.0) / ((n - 1.0) * (n - 3.0)) *
         centered_offdiag_sum_squares(a);
}

double variance_no_two_cycles(const SquareMatrix& a) {
  require_symmetric(a, "long-cycle variance");
  require_n_at_least(a, 4, "long-cycle variance");
  return centered_offdiag_sum_squares(a) / static_cast<double>(a.n() - 1);
}

LawMoments law_moments(const SquareMatrix& a, const PermLaw& law) {
  if (law.n() != a.n()) {
    throw std::domain_error("law size must match the matrix");
  }
  switch (law.kind()) {
    case LawKind::uniform:
      return moments_uniform(a);
    case LawKind::fpf_involution: {
      std::vector<std::size_t> counts(a.n(), 0);
      counts[1] = a.n() / 2;
      return moments_cycle_type(a, CycleType(std::move(counts)));
    }
    case LawKind::cycle_type:
      return moments_cycle_type(a, law.type());
    case LawKind::mixture: {
      // Every fixed-point-free type has the same mean, so the mixture
      // variance is the weighted per-type variance.
      LawMoments out;
      for (const auto& [type, weight] : law.components()) {
        const LawMoments part = moments_cycle_type(a, type);
        out.mean += weight * part.mean;
        out.variance += weight * part.variance;
      }
      return out;
    }
  }
  throw std::logic_error("unknown law kind");
}

double coupling_constant(const SquareMatrix& a, const PermLaw& law) {
  if (law.n() != a.n()) {
    throw std::domain_error("law size must match the matrix");
  }
  switch (law.kind()) {
    case LawKind::uniform:
      require_n_at_least(a, 3, "uniform-law coupling");
      return 8.0 * sup_norm_centered(a);
    case LawKind::fpf_involution:
      require_symmetric(a, "involution-law coupling");
      require_n_at_least(a, 5, "involution-law coupling");
      return 24.0 * sup_norm_centered_offdiag(a);
    case LawKind::cycle_type: {
      const CycleType& f = law.type();
      if (!f.fixed_point_free()) {
        throw std::domain_error(
            "cycle-type coupling requires a fixed-point-free type");
      }
      require_symmetric(a, "cycle-type coupling");
      require_n_at_least(a, 5, "cycle-type coupling");
      if (f.is_involution_type()) {
        return 24.0 * sup_norm_centered_offdiag(a);
      }
      if (f.has_only_long_cycles()) {
        return 40.0 * sup_norm_centered_offdiag(a);
      }
      throw std::domain_error(
          "unsupported cycle type: no coupling constant is available for "
          "types mixing two-cycles with longer cycles");
    }
    case LawKind::mixture:
      throw std::domain_error(
          "mixture laws use per-component coupling constants; evaluate "
          "tail_bound instead");
  }
  throw std::logic_error("unknown law kind");
}

BoundValue tail_bound(const SquareMatrix& a, const PermLaw& law, double t,
                      BoundKind kind) {
  switch (kind) {
    case BoundKind::one_sided:
    case BoundKind::two_sided:
    case BoundKind::tlogt_tight:
    case BoundKind::tlogt_loose:
    case BoundKind::bernstein:
      break;
    case BoundKind::bennett:
      throw std::domain_error(
          "bennett requires independent summands and does not apply to "
          "permutation statistics");
    case BoundKind::chatterjee:
    case BoundKind::hoeffding_two_sided:
      throw std::domain_error(
          std::string(to_string(kind)) +
          " is moment-based; evaluate it directly from (mu, sigma2)");
  }
  if (law.kind() == LawKind::mixture) {
    BoundValue out;
    out.kind = kind;
    out.raw = 0.0;
    out.clamped = 0.0;
    for (const auto& [type, weight] : law.components()) {
      const BoundValue part =
          tail_bound(a, PermLaw::cycle_type(type), t, kind);
      if (!part.applicable) {
        return part;  // applicability depends only on t, shared by all parts
      }
      out.raw += weight * part.raw;
      out.clamped += weight * part.clamped;
    }
    return out;
  }
  BoundInput in;
  in.sigma2 = law_moments(a, law).variance;
  in.c = coupling_constant(a, law);
  in.t = t;
  return evaluate(kind, in, /*bernstein_a=*/4.0);
}

}  // namespace zbtail
