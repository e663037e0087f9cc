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

#ifndef ZBTAIL_BOUNDS_HPP_
#define ZBTAIL_BOUNDS_HPP_

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace zbtail {

// Closed-form tail bounds for a mean-zero variable Y with variance sigma2
// whose zero-bias coupling satisfies Y* - Y <= c (or |Y* - Y| <= c for the
// two-sided variants). All evaluators compute the exponent first and
// exponentiate once; underflow to 0 for huge t is accepted.
enum class BoundKind {
  // exp(-t^2 / (2 (sigma2 + c t))), one-sided coupling, t >= 0.
  one_sided,
  // exp(-t^2 / (10 sigma2 / 3 + c t)), |Y*-Y| <= c, t >= 0.
  two_sided,
  // exp(-(t/c) (log t - log log t - sigma2/c)), t > e.
  tlogt_tight,
  // exp(-(t/(2c)) (log t - 2 sigma2/c)), t > e; always >= tlogt_tight.
  tlogt_loose,
  // exp(-t^2 / (2 sigma2 + a c t)); a = 4 is the zero-bias value for sums of
  // independent summands bounded by c, a = 2/3 the classical constant.
  bernstein,
  // e^{t/c} exp(-(sigma2/c^2)(1 + c t/sigma2) log(1 + c t/sigma2)).
  bennett,
  // 2 exp(-t^2 / (4 mu + 2 t)); mean-based two-sided bound for matrices with
  // entries in [0, 1].
  chatterjee,
  // 2 exp(-t^2 / (2 sigma2 + 16 t)); the variance-based two-sided companion
  // of chatterjee (one_sided with c = 8, doubled).
  hoeffding_two_sided,
};

const char* to_string(BoundKind kind);
std::optional<BoundKind> bound_kind_from_string(const std::string& name);

struct BoundInput {
  double sigma2 = 0;  // variance, > 0 and finite
  double c = 0;       // coupling bound, >= 0 and finite
  double t = 0;       // deviation threshold, >= 0 and finite
};

// Raw formula values can exceed 1 (they are exponential expressions, not
// probabilities by construction); `clamped` = min(raw, 1) is the usable
// probability bound. When `applicable` is false both values are NaN.
struct BoundValue {
  BoundKind kind = BoundKind::one_sided;
  bool applicable = true;
  double raw = std::numeric_limits<double>::quiet_NaN();
  double clamped = std::numeric_limits<double>::quiet_NaN();
};

enum class TlogtForm { tight, loose };

BoundValue zb_one_sided(const BoundInput& in);
BoundValue zb_two_sided(const BoundInput& in);
// Not applicable (never an error) for t <= e; throws for c = 0.
BoundValue zb_tlogt(const BoundInput& in, TlogtForm form);
BoundValue bernstein_family(const BoundInput& in, double a);
// Throws for c = 0 (the formula is singular there).
BoundValue bennett(const BoundInput& in);
BoundValue chatterjee(double mu, double t);
BoundValue zb_hoeffding_two_sided(double sigma_a2, double t);

// Deviation level below which one_sided beats two_sided: 4 sigma2 / (3 c).
// The two raw values are equal exactly at the returned t.
double regime_threshold(double sigma2, double c);

// Deviation level below which hoeffding_two_sided beats chatterjee:
// (2 mu_a - sigma_a2) / 7. A non-positive return means chatterjee wins for
// every t >= 0.
double chatterjee_crossover(double mu_a, double sigma_a2);

// Evaluates one of the six generic kinds (one_sided .. bennett) at `in`.
// `bernstein_a` is only read for BoundKind::bernstein.
BoundValue evaluate(BoundKind kind, const BoundInput& in,
                    double bernstein_a = 4.0);

// Smallest clamped value among the applicable members of `available`;
// ties break by enum order. Kinds whose own preconditions fail (t <= e,
// c = 0) are skipped, not errors. Returns nullopt when nothing applies.
std::optional<BoundValue> best_bound(const BoundInput& in,
                                     const std::vector<BoundKind>& available,
                                     double bernstein_a = 4.0);

}  // namespace zbtail

#endif  // ZBTAIL_BOUNDS_HPP_
