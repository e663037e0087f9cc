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

#ifndef ZBTAIL_ORACLE_HPP_
#define ZBTAIL_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "zbtail/bounds.hpp"
#include "zbtail/cycle_type.hpp"
#include "zbtail/discrete_dist.hpp"
#include "zbtail/matrix.hpp"
#include "zbtail/perm_law.hpp"
#include "zbtail/permstat.hpp"
#include "zbtail/permutation.hpp"

namespace zbtail {

// Ground-truth engines: exact enumeration over permutation classes, the
// optimized exponential-moment bound, and seeded Monte Carlo with exact
// binomial confidence intervals. Everything here is deliberately independent
// of the closed-form moment formulas it is used to check.

struct EnumLimits {
  std::size_t max_uniform_n = 9;       // 9! = 362880 permutations
  std::size_t max_involution_n = 10;   // 9!! = 945 involutions
  std::uint64_t max_class_size = 1000000;
};

enum class TailMethod { exact, monte_carlo };

struct TailEstimate {
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t trials = 0;  // class size for exact, draw count for MC
  TailMethod method = TailMethod::exact;
};

// Enumeration visitors. Each calls fn once per permutation of the class, in
// a fixed deterministic order.
void for_each_permutation(std::size_t n,
                          const std::function<void(const Permutation&)>& fn);
void for_each_fpf_involution(std::size_t n,
                             const std::function<void(const Permutation&)>& fn);
void for_each_of_type(const CycleType& f,
                      const std::function<void(const Permutation&)>& fn);

// Materializes the support class of a non-mixture law (throws
// std::domain_error for mixtures; enumerate their components instead).
// Throws ResourceLimitError beyond the configured caps.
std::vector<Permutation> enumerate_class(const PermLaw& law,
                                         const EnumLimits& limits = {});

// Exact mean/variance of Y = sum_i a_{i,p(i)} under the law, by full class
// enumeration (mixtures: weighted moments). Independent of the closed-form
// formulas in permstat.hpp.
LawMoments exact_moments(const SquareMatrix& a, const PermLaw& law,
                         const EnumLimits& limits = {});

// Exact P(Y - mean >= t), with `mean` the law's own enumeration mean;
// mixtures combine per-class tails around the mixture mean by weight.
TailEstimate exact_tail(const SquareMatrix& a, const PermLaw& law, double t,
                        const EnumLimits& limits = {});

// Exact P(|Y - mean| >= t), the two-sided companion.
TailEstimate exact_tail_two_sided(const SquareMatrix& a, const PermLaw& law,
                                  double t, const EnumLimits& limits = {});

struct McOptions {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double level = 0.999;  // confidence level of the interval
};

// Monte Carlo estimate of P(Y - mean >= t) with mean = law_moments(a, law).
// Draws are partitioned into fixed blocks of 65536 with one generator stream
// per block, so the result depends only on (seed, trials), never on the
// thread count. The interval is exact binomial (Clopper-Pearson).
TailEstimate mc_tail(const SquareMatrix& a, const PermLaw& law, double t,
                     const McOptions& opts);

// Two-sided Monte Carlo companion: P(|Y - mean| >= t).
TailEstimate mc_tail_two_sided(const SquareMatrix& a, const PermLaw& law,
                               double t, const McOptions& opts);

// inf_{s >= 0} e^{-st} E[e^{sY}] for a mean-zero discrete Y and t >= 0. The
// objective's log is convex; a bracket expansion plus golden-section search
// nails the exponent to ~1e-10. When the infimum is approached as s grows
// without bound (t >= max Y), the limit P-mass value is returned directly:
// 0 for t > max Y, P(Y = max Y) at t = max Y.
double chernoff_tail(const DiscreteDist& d, double t);

// Exact binomial (Clopper-Pearson) confidence interval for a proportion.
struct Interval {
  double low = 0.0;
  double high = 1.0;
};
Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials,
                         double level);

// Half-width of the sup-norm empirical-CDF band that holds with probability
// >= level for n iid draws: sqrt(log(2 / (1 - level)) / (2 n)).
double dkw_epsilon(std::uint64_t n, double level);

struct DominationRow {
  double t = 0.0;
  BoundKind kind = BoundKind::one_sided;
  bool applicable = true;
  double bound = 1.0;   // clamped bound value
  double tail = 0.0;    // exact tail, or MC point estimate
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool satisfied = true;
  double margin = 0.0;  // bound - comparison tail
};

struct DominationReport {
  std::vector<DominationRow> rows;
  bool pass = true;  // all applicable rows satisfied
};

struct DominationOptions {
  bool use_monte_carlo = false;  // compare against CI upper bound instead
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double level = 0.999;
  EnumLimits limits{};
  // Multiplies every bound before comparison. Strictly a negative-control
  // hook: scaling by e.g. 1e-6 must make validation fail.
  double bound_scale = 1.0;
};

// One row per (t, kind): bound via tail_bound(a, law, t, kind) against the
// exact (or Monte Carlo upper-CI) upper tail P(Y - mean >= t) — every kind
// here controls the upper tail; the kinds differ only in their coupling
// hypotheses. satisfied means tail <= bound + 1e-12; inapplicable rows
// (t <= e for the tlogt kinds) are reported but never counted as failures.
DominationReport validate_domination(const SquareMatrix& a, const PermLaw& law,
                                     const std::vector<double>& t_grid,
                                     const std::vector<BoundKind>& kinds,
                                     const DominationOptions& opts = {});

struct MomentExperiment {
  double mean_variance = 0.0;  // average sigma^2 over replications
  double target_variance = 0.0;
  double se_variance = 0.0;
  double mean_mean = 0.0;      // average mu over replications
  double target_mean = 0.0;
  double se_mean = 0.0;
  std::uint64_t reps = 0;
};

// Draws `reps` n x n matrices with iid entries (uniform on [0,1] when
// entry_dist is empty, else the given distribution, which must be supported
// in [0,1]) and averages the uniform-law moments. Targets are
// (n-1) * Var(entry) and n * E[entry]. Deterministic in (seed, reps),
// independent of thread count.
MomentExperiment expected_moment_experiment(
    std::size_t n, const std::optional<DiscreteDist>& entry_dist,
    std::uint64_t reps, std::uint64_t seed, unsigned threads = 1);

}  // namespace zbtail

#endif  // ZBTAIL_ORACLE_HPP_
