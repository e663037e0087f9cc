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

#ifndef ZBTAIL_PERMSTAT_HPP_
#define ZBTAIL_PERMSTAT_HPP_

#include <vector>

#include "zbtail/bounds.hpp"
#include "zbtail/cycle_type.hpp"
#include "zbtail/matrix.hpp"
#include "zbtail/perm_law.hpp"
#include "zbtail/permutation.hpp"

namespace zbtail {

// The permutation statistic Y = sum_i a_{i, p(i)} and its exact moments and
// tail bounds under permutation laws that are constant on conjugacy classes.

struct LawMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// sum_i a_{i, p(i)}; the permutation size must equal the matrix dimension.
double hoeffding_stat(const SquareMatrix& a, const Permutation& p);

// Exact mean and variance of Y under the uniform law on all permutations:
//   mean     = n * grand_mean
//   variance = sum_ij (a_ij - a_i. - a_.j + a_..)^2 / (n - 1)
// The variance is also computed in the algebraically equal moment form
// sum_ij (a_ij^2 - a_i.^2 - a_.j^2 + a_..^2) / (n - 1) and the two are
// required to agree within 1e-9 relative (std::logic_error otherwise); the
// numerically stable centered form is returned. Requires n >= 2.
LawMoments moments_uniform(const SquareMatrix& a);

// max_ij |a_ij - a_i.|, the scale that drives the uniform-law coupling.
double sup_norm_centered(const SquareMatrix& a);

// Centered off-diagonal array h_ij = a_ij - r_i - r_j + g for i != j (zero
// diagonal), where r_i is the off-diagonal row mean and g the off-diagonal
// grand mean. With the n-2 normalization of those means, each row of h sums
// to zero over j != i; h is the exact centering under which the cycle-type
// moment formulas below hold. Requires n >= 3.
std::vector<std::vector<double>> centered_offdiag(const SquareMatrix& a);

// max_{i != j} |h_ij|; the scale driving the cycle-type couplings.
double sup_norm_centered_offdiag(const SquareMatrix& a);

// sum_{i != j} h_ij^2.
double centered_offdiag_sum_squares(const SquareMatrix& a);

// Exact moments of Y under the uniform law on one cycle type f without fixed
// points, for symmetric a and n >= 4:
//   mean     = (n - 2) * offdiag_grand_mean
//   variance = (1/(n-1) + 2 f_2 / (n (n-3))) * sum_{i != j} h_ij^2
// Throws std::domain_error for asymmetric input, f_1 != 0, or n < 4.
LawMoments moments_cycle_type(const SquareMatrix& a, const CycleType& f);

// The two named specializations of the cycle-type variance:
//   involution (f_2 = n/2):  2(n-2) / ((n-1)(n-3)) * sum h^2   (even n >= 4)
//   no two-cycles (f_2 = 0): sum h^2 / (n - 1)                  (n >= 4)
double variance_involution(const SquareMatrix& a);
double variance_no_two_cycles(const SquareMatrix& a);

// Moments under any supported law. Mixtures have a common mean (every
// fixed-point-free type has mean (n-2) * offdiag_grand_mean), so the mixture
// variance is the weighted sum of per-type variances; mixtures with mass on
// types with fixed points are rejected.
LawMoments law_moments(const SquareMatrix& a, const PermLaw& law);

// Almost-sure bound c on |Y* - Y| for the law's zero-bias coupling:
//   uniform law:         8  * sup_norm_centered          (n >= 3)
//   fpf involution law: 24  * sup_norm_centered_offdiag  (n >= 5, symmetric)
//   cycle type, f_1 = f_2 = 0:
//                       40  * sup_norm_centered_offdiag  (n >= 5, symmetric)
// A cycle_type law of involution type routes to the involution constant.
// Other types with f_2 > 0 carry no known constant and are rejected; mixture
// laws use per-component constants inside tail_bound and are rejected here.
double coupling_constant(const SquareMatrix& a, const PermLaw& law);

// Tail bound on P(Y - mean >= t) (or the |Y - mean| version for two_sided),
// composing the generic evaluators with the law's (variance, c). Supported
// kinds: one_sided, two_sided, tlogt_tight, tlogt_loose, bernstein (with
// parameter a = 4, the coupling value). bennett requires independent
// summands and is rejected; chatterjee / hoeffding_two_sided take moments
// directly and live in bounds.hpp.
//
// For mixture laws the result is the weight-averaged bound over component
// types: raw and clamped are each averaged, so clamped can be strictly below
// min(raw, 1); it is still a valid probability bound.
BoundValue tail_bound(const SquareMatrix& a, const PermLaw& law, double t,
                      BoundKind kind);

}  // namespace zbtail

#endif  // ZBTAIL_PERMSTAT_HPP_
