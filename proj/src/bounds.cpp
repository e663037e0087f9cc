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

#include "zbtail/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zbtail {
namespace {

void check_input(const BoundInput& in) {
  if (!std::isfinite(in.sigma2) || in.sigma2 <= 0) {
    throw std::domain_error("bound input requires finite sigma2 > 0");
  }
  if (!std::isfinite(in.c) || in.c < 0) {
    throw std::domain_error("bound input requires finite c >= 0");
  }
  if (!std::isfinite(in.t) || in.t < 0) {
    throw std::domain_error("bound input requires finite t >= 0");
  }
}

void check_positive_c(const BoundInput& in, const char* kind_name) {
  if (in.c <= 0) {
    throw std::domain_error(std::string(kind_name) +
                            " requires c > 0 (the formula is singular at 0)");
  }
}

BoundValue from_exponent(BoundKind kind, double exponent, double factor = 1.0) {
  BoundValue v;
  v.kind = kind;
  v.applicable = true;
  v.raw = factor * std::exp(exponent);
  v.clamped = std::min(v.raw, 1.0);
  return v;
}

BoundValue not_applicable(BoundKind kind) {
  BoundValue v;
  v.kind = kind;
  v.applicable = false;
  return v;
}

constexpr double kE = 2.718281828459045235360287;

}  // namespace

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::one_sided:
      return "one-sided";
    case BoundKind::two_sided:
      return "two-sided";
    case BoundKind::tlogt_tight:
      return "tlogt-tight";
    case BoundKind::tlogt_loose:
      return "tlogt-loose";
    case BoundKind::bernstein:
      return "bernstein";
    case BoundKind::bennett:
      return "bennett";
    case BoundKind::chatterjee:
      return "chatterjee";
    case BoundKind::hoeffding_two_sided:
      return "hoeffding-two-sided";
  }
  return "unknown";
}

std::optional<BoundKind> bound_kind_from_string(const std::string& name) {
  static const std::pair<const char*, BoundKind> table[] = {
      {"one-sided", BoundKind::one_sided},
      {"two-sided", BoundKind::two_sided},
      {"tlogt-tight", BoundKind::tlogt_tight},
      {"tlogt-loose", BoundKind::tlogt_loose},
      {"bernstein", BoundKind::bernstein},
      {"bennett", BoundKind::bennett},
      {"chatterjee", BoundKind::chatterjee},
      {"hoeffding-two-sided", BoundKind::hoeffding_two_sided},
  };
  for (const auto& [key, kind] : table) {
    if (name == key) {
      return kind;
    }
  }
  return std::nullopt;
}

BoundValue zb_one_sided(const BoundInput& in) {
  check_input(in);
  // Writing the denominator as 2*sigma2 + 2*(c*t) keeps zb_one_sided with
  // coupling 2c bit-identical to bernstein_family with a = 4 (scaling a
  // product by a power of two is exact).
  const double denom = 2.0 * in.sigma2 + 2.0 * (in.c * in.t);
  return from_exponent(BoundKind::one_sided, -(in.t * in.t) / denom);
}

BoundValue zb_two_sided(const BoundInput& in) {
  check_input(in);
  const double denom = 10.0 * in.sigma2 / 3.0 + in.c * in.t;
  return from_exponent(BoundKind::two_sided, -(in.t * in.t) / denom);
}

BoundValue zb_tlogt(const BoundInput& in, TlogtForm form) {
  check_input(in);
  const BoundKind kind = form == TlogtForm::tight ? BoundKind::tlogt_tight
                                                  : BoundKind::tlogt_loose;
  check_positive_c(in, to_string(kind));
  if (in.t <= kE) {
    return not_applicable(kind);
  }
  const double log_t = std::log(in.t);
  double exponent;
  if (form == TlogtForm::tight) {
    exponent = -(in.t / in.c) * (log_t - std::log(log_t) - in.sigma2 / in.c);
  } else {
    exponent = -(in.t / (2.0 * in.c)) * (log_t - 2.0 * in.sigma2 / in.c);
  }
  return from_exponent(kind, exponent);
}

BoundValue bernstein_family(const BoundInput& in, double a) {
  check_input(in);
  if (!std::isfinite(a) || a <= 0) {
    throw std::domain_error("bernstein requires a > 0");
  }
  const double denom = 2.0 * in.sigma2 + a * (in.c * in.t);
  return from_exponent(BoundKind::bernstein, -(in.t * in.t) / denom);
}

BoundValue bennett(const BoundInput& in) {
  check_input(in);
  check_positive_c(in, "bennett");
  const double ratio = in.c * in.t / in.sigma2;
  const double exponent =
      in.t / in.c -
      (in.sigma2 / (in.c * in.c)) * (1.0 + ratio) * std::log1p(ratio);
  return from_exponent(BoundKind::bennett, exponent);
}

BoundValue chatterjee(double mu, double t) {
  if (!std::isfinite(mu) || mu <= 0) {
    throw std::domain_error("chatterjee requires finite mu > 0");
  }
  if (!std::isfinite(t) || t < 0) {
    throw std::domain_error("chatterjee requires finite t >= 0");
  }
  return from_exponent(BoundKind::chatterjee, -(t * t) / (4.0 * mu + 2.0 * t),
                       2.0);
}

BoundValue zb_hoeffding_two_sided(double sigma_a2, double t) {
  if (!std::isfinite(sigma_a2) || sigma_a2 <= 0) {
    throw std::domain_error("hoeffding-two-sided requires finite sigma2 > 0");
  }
  if (!std::isfinite(t) || t < 0) {
    throw std::domain_error("hoeffding-two-sided requires finite t >= 0");
  }
  return from_exponent(BoundKind::hoeffding_two_sided,
                       -(t * t) / (2.0 * sigma_a2 + 16.0 * t), 2.0);
}

double regime_threshold(double sigma2, double c) {
  if (!std::isfinite(sigma2) || sigma2 <= 0) {
    throw std::domain_error("regime threshold requires finite sigma2 > 0");
  }
  if (!std::isfinite(c) || c <= 0) {
    throw std::domain_error("regime threshold requires finite c > 0");
  }
  return 4.0 * sigma2 / (3.0 * c);
}

double chatterjee_crossover(double mu_a, double sigma_a2) {
  if (!std::isfinite(mu_a)) {
    throw std::domain_error("crossover requires finite mu");
  }
  if (!std::isfinite(sigma_a2) || sigma_a2 <= 0) {
    throw std::domain_error("crossover requires finite sigma2 > 0");
  }
  return (2.0 * mu_a - sigma_a2) / 7.0;
}

BoundValue evaluate(BoundKind kind, const BoundInput& in, double bernstein_a) {
  switch (kind) {
    case BoundKind::one_sided:
      return zb_one_sided(in);
    case BoundKind::two_sided:
      return zb_two_sided(in);
    case BoundKind::tlogt_tight:
      return zb_tlogt(in, TlogtForm::tight);
    case BoundKind::tlogt_loose:
      return zb_tlogt(in, TlogtForm::loose);
    case BoundKind::bernstein:
      return bernstein_family(in, bernstein_a);
    case BoundKind::bennett:
      return bennett(in);
    case BoundKind::chatterjee:
    case BoundKind::hoeffding_two_sided:
      throw std::domain_error(
          std::string(to_string(kind)) +
          " is moment-based; call it directly with (mu or sigma2, t)");
  }
  throw std::domain_error("unknown bound kind");
}

std::optional<BoundValue> best_bound(const BoundInput& in,
                                     const std::vector<BoundKind>& available,
                                     double bernstein_a) {
  check_input(in);
  for (BoundKind kind : available) {
    if (kind == BoundKind::chatterjee ||
        kind == BoundKind::hoeffding_two_sided) {
      throw std::domain_error(
          std::string(to_string(kind)) +
          " is moment-based and cannot enter a (sigma2, c, t) comparison");
    }
  }
  static const BoundKind order[] = {
      BoundKind::one_sided,   BoundKind::two_sided, BoundKind::tlogt_tight,
      BoundKind::tlogt_loose, BoundKind::bernstein, BoundKind::bennett,
  };
  std::optional<BoundValue> best;
  for (BoundKind kind : order) {
    if (std::find(available.begin(), available.end(), kind) ==
        available.end()) {
      continue;
    }
    // A kind whose own precondition fails (c = 0 for the log-scale and
    // bennett forms) simply does not compete.
    if (in.c <= 0 && (kind == BoundKind::tlogt_tight ||
                      kind == BoundKind::tlogt_loose ||
                      kind == BoundKind::bennett)) {
      continue;
    }
    BoundValue value = evaluate(kind, in, bernstein_a);
    if (!value.applicable) {
      continue;
    }
    if (!best || value.clamped < best->clamped) {
      best = value;
    }
  }
  return best;
}

}  // namespace zbtail
