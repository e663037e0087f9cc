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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "test_util.hpp"
#include "zbtail/bounds.hpp"

using namespace zbtail;

namespace {
constexpr double kTight = 1e-14;
const double kNan = std::numeric_limits<double>::quiet_NaN();
const double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("one-sided bound formula values") {
  CHECK(zb_one_sided({1, 0, 2}).raw ==
        doctest::Approx(0.135335283236612691894).epsilon(kTight));
  CHECK(zb_one_sided({3, 8, 0}).raw == 1.0);
  CHECK(zb_one_sided({2, 1, 2}).raw ==
        doctest::Approx(0.606530659712633423604).epsilon(kTight));
  const BoundValue v = zb_one_sided({1, 1, 5});
  CHECK(v.applicable);
  CHECK(v.kind == BoundKind::one_sided);
  CHECK(v.clamped == v.raw);
  CHECK(v.raw <= 1.0);
}

TEST_CASE("two-sided bound formula values") {
  CHECK(zb_two_sided({3, 1, 1}).raw ==
        doctest::Approx(0.913100716282262342397).epsilon(kTight));
  CHECK(zb_two_sided({1, 1, 0}).raw == 1.0);
}

TEST_CASE("one-sided and two-sided exponents cross at the regime threshold") {
  const std::vector<std::pair<double, double>> cases = {
      {1.0, 1.0}, {2.5, 0.3}, {0.2, 7.0}};
  for (const auto& [sigma2, c] : cases) {
    const double threshold = regime_threshold(sigma2, c);
    CHECK(threshold == doctest::Approx(4.0 * sigma2 / (3.0 * c)));
    const double at = zb_one_sided({sigma2, c, threshold}).raw;
    const double at2 = zb_two_sided({sigma2, c, threshold}).raw;
    CHECK(zbtail_test::rel_err(at, at2) < 1e-12);
    // Below the threshold the one-sided form wins, above it the two-sided.
    const double below = threshold * 0.9;
    const double above = threshold * 1.1;
    CHECK(zb_one_sided({sigma2, c, below}).raw <
          zb_two_sided({sigma2, c, below}).raw);
    CHECK(zb_one_sided({sigma2, c, above}).raw >
          zb_two_sided({sigma2, c, above}).raw);
  }
}

TEST_CASE("t log t bounds: values, applicability gate, and ordering") {
  const BoundValue tight = zb_tlogt({1, 1, 10}, TlogtForm::tight);
  CHECK(tight.applicable);
  CHECK(tight.raw ==
        doctest::Approx(0.00922787506488913449758).epsilon(kTight));
  const BoundValue loose = zb_tlogt({1, 1, 10}, TlogtForm::loose);
  CHECK(loose.raw ==
        doctest::Approx(0.220264657948067165170).epsilon(kTight));
  CHECK(tight.raw <= loose.raw);

  const double e = std::exp(1.0);
  const BoundValue at_e = zb_tlogt({1, 1, e}, TlogtForm::tight);
  CHECK_FALSE(at_e.applicable);
  CHECK(std::isnan(at_e.raw));
  CHECK(std::isnan(at_e.clamped));
  CHECK(zb_tlogt({1, 1, std::nextafter(e, 4.0)}, TlogtForm::tight).applicable);
  CHECK_FALSE(zb_tlogt({1, 1, 1.0}, TlogtForm::loose).applicable);

  CHECK_THROWS_AS(zb_tlogt({1, 0, 10}, TlogtForm::tight), std::domain_error);

  // Raw values may exceed one when sigma2/c is large; clamping caps them.
  const BoundValue big = zb_tlogt({40, 1, 3}, TlogtForm::tight);
  CHECK(big.applicable);
  CHECK(big.raw > 1.0);
  CHECK(big.clamped == 1.0);
}

TEST_CASE("bernstein family: values, monotonicity in a, validation") {
  CHECK(bernstein_family({1, 1, 1}, 4).raw ==
        doctest::Approx(0.846481724890614074045).epsilon(kTight));
  CHECK(bernstein_family({1, 1, 0}, 2.0 / 3.0).raw == 1.0);
  CHECK(bernstein_family({1.3, 0.7, 2.1}, 2.0 / 3.0).raw <
        bernstein_family({1.3, 0.7, 2.1}, 4).raw);
  CHECK_THROWS_AS(bernstein_family({1, 1, 1}, 0), std::domain_error);
  CHECK_THROWS_AS(bernstein_family({1, 1, 1}, -1), std::domain_error);
}

TEST_CASE("one-sided at coupling 2c equals bernstein a=4 at c, bit for bit") {
  zbtail::Rng rng(7, 0);
  for (int i = 0; i < 50; ++i) {
    const double sigma2 = 0.1 + 3 * rng.unit();
    const double c = 0.05 + 2 * rng.unit();
    const double t = 5 * rng.unit();
    CHECK(zb_one_sided({sigma2, 2 * c, t}).raw ==
          bernstein_family({sigma2, c, t}, 4).raw);
  }
}

TEST_CASE("bennett bound") {
  CHECK(bennett({1, 1, 1}).raw ==
        doctest::Approx(0.679570457114761308840).epsilon(kTight));
  CHECK(bennett({2, 0.5, 0}).raw == 1.0);
  CHECK_THROWS_AS(bennett({1, 0, 1}), std::domain_error);
  // Bennett is at least as sharp as the a=4 family for the same inputs at
  // large t (its exponent grows like t log t).
  CHECK(bennett({1, 1, 50}).raw < bernstein_family({1, 1, 50}, 4).raw);
}

TEST_CASE("mean-based two-sided bounds and their crossover") {
  CHECK(chatterjee(3, 1).raw ==
        doctest::Approx(1.86212555940804553203).epsilon(kTight));
  CHECK(chatterjee(3, 1).clamped == 1.0);
  CHECK(chatterjee(1, 0).raw == 2.0);
  CHECK_THROWS_AS(chatterjee(0, 1), std::domain_error);
  CHECK_THROWS_AS(chatterjee(-1, 1), std::domain_error);

  const double hoeff = zb_hoeffding_two_sided(1, 10).raw;
  CHECK(hoeff == doctest::Approx(2 * std::exp(-100.0 / 162.0)).epsilon(kTight));
  CHECK_THROWS_AS(zb_hoeffding_two_sided(0, 1), std::domain_error);

  // Below (2 mu - sigma2)/7 the variance-based kind wins, above it the
  // mean-based kind.
  zbtail::Rng rng(11, 0);
  for (int i = 0; i < 25; ++i) {
    const double mu = 0.5 + 2.5 * rng.unit();
    const double sigma2 = 0.1 + (2 * mu - 0.2) * rng.unit();
    const double crossover = chatterjee_crossover(mu, sigma2);
    CHECK(crossover == doctest::Approx((2 * mu - sigma2) / 7.0));
    REQUIRE(crossover > 0);
    const double below = crossover * 0.95;
    const double above = crossover * 1.05;
    CHECK(zb_hoeffding_two_sided(sigma2, below).raw <
          chatterjee(mu, below).raw);
    CHECK(zb_hoeffding_two_sided(sigma2, above).raw >
          chatterjee(mu, above).raw);
    CHECK(zbtail_test::rel_err(zb_hoeffding_two_sided(sigma2, crossover).raw,
                               chatterjee(mu, crossover).raw) < 1e-12);
  }
}

TEST_CASE("all bounds decrease in t and are continuous down to 1 at t=0") {
  const BoundInput base{1.7, 0.9, 0};
  for (BoundKind kind : {BoundKind::one_sided, BoundKind::two_sided,
                         BoundKind::bernstein, BoundKind::bennett}) {
    double prev = evaluate(kind, base).raw;
    CHECK(prev == 1.0);
    for (double t = 0.25; t <= 12; t += 0.25) {
      const double value = evaluate(kind, {1.7, 0.9, t}).raw;
      CHECK(value < prev);
      prev = value;
    }
  }
}

TEST_CASE("input validation rejects bad variance, coupling, and thresholds") {
  CHECK_THROWS_AS(zb_one_sided({0, 1, 1}), std::domain_error);
  CHECK_THROWS_AS(zb_one_sided({-1, 1, 1}), std::domain_error);
  CHECK_THROWS_AS(zb_one_sided({1, -0.5, 1}), std::domain_error);
  CHECK_THROWS_AS(zb_one_sided({1, 1, -1}), std::domain_error);
  CHECK_THROWS_AS(zb_one_sided({kNan, 1, 1}), std::domain_error);
  CHECK_THROWS_AS(zb_two_sided({1, kInf, 1}), std::domain_error);
  CHECK_THROWS_AS(bennett({1, 1, kNan}), std::domain_error);
}

TEST_CASE("kind names round-trip") {
  for (BoundKind kind :
       {BoundKind::one_sided, BoundKind::two_sided, BoundKind::tlogt_tight,
        BoundKind::tlogt_loose, BoundKind::bernstein, BoundKind::bennett,
        BoundKind::chatterjee, BoundKind::hoeffding_two_sided}) {
    const auto parsed = bound_kind_from_string(to_string(kind));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == kind);
  }
  CHECK_FALSE(bound_kind_from_string("no-such-kind").has_value());
}

TEST_CASE("evaluate dispatches and rejects the moment-based kinds") {
  const BoundInput in{1, 1, 2};
  CHECK(evaluate(BoundKind::one_sided, in).raw == zb_one_sided(in).raw);
  CHECK(evaluate(BoundKind::two_sided, in).raw == zb_two_sided(in).raw);
  CHECK(evaluate(BoundKind::bennett, in).raw == bennett(in).raw);
  CHECK(evaluate(BoundKind::bernstein, in, 2.0 / 3.0).raw ==
        bernstein_family(in, 2.0 / 3.0).raw);
  CHECK_THROWS_AS(evaluate(BoundKind::chatterjee, in), std::domain_error);
  CHECK_THROWS_AS(evaluate(BoundKind::hoeffding_two_sided, in),
                  std::domain_error);
}

TEST_CASE("best bound picks the smallest applicable value") {
  const std::vector<BoundKind> all = {BoundKind::one_sided,
                                      BoundKind::two_sided,
                                      BoundKind::tlogt_tight,
                                      BoundKind::tlogt_loose,
                                      BoundKind::bernstein,
                                      BoundKind::bennett};
  const auto best = best_bound({1, 1, 30}, all);
  REQUIRE(best.has_value());
  double smallest = 2.0;
  for (BoundKind kind : all) {
    const BoundValue value = evaluate(kind, {1, 1, 30});
    if (value.applicable) {
      smallest = std::min(smallest, value.clamped);
    }
  }
  CHECK(best->clamped == smallest);

  // Ties break toward the earliest kind in declaration order: at t = 0 all
  // four always-applicable kinds evaluate to 1.
  const auto tie = best_bound({1, 1, 0}, all);
  REQUIRE(tie.has_value());
  CHECK(tie->kind == BoundKind::one_sided);

  // Kinds whose own preconditions fail are skipped silently.
  const auto gated =
      best_bound({1, 1, 2}, {BoundKind::tlogt_tight, BoundKind::one_sided});
  REQUIRE(gated.has_value());
  CHECK(gated->kind == BoundKind::one_sided);
  CHECK_FALSE(
      best_bound({1, 1, 2}, {BoundKind::tlogt_tight}).has_value());
  const auto no_c = best_bound({1, 0, 9}, {BoundKind::tlogt_tight,
                                           BoundKind::bennett,
                                           BoundKind::two_sided});
  REQUIRE(no_c.has_value());
  CHECK(no_c->kind == BoundKind::two_sided);

  CHECK_THROWS_AS(best_bound({1, 1, 2}, {BoundKind::chatterjee}),
                  std::domain_error);
}
