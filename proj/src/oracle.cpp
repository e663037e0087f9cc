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

#include "zbtail/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "zbtail/errors.hpp"
#include "zbtail/parallel.hpp"
#include "zbtail/rng.hpp"

namespace zbtail {
namespace {

constexpr std::uint64_t kMcBlock = 65536;
constexpr double kDominationSlack = 1e-12;

double stat_of(const SquareMatrix& a, const Permutation& p) {
  double y = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    y += a.at(i, p[i]);
  }
  return y;
}

void check_class_limits(const PermLaw& law, const EnumLimits& limits) {
  switch (law.kind()) {
    case LawKind::uniform:
      if (law.n() > limits.max_uniform_n) {
        throw ResourceLimitError(
            "uniform-law enumeration capped at n <= " +
            std::to_string(limits.max_uniform_n));
      }
      return;
    case LawKind::fpf_involution:
      if (law.n() > limits.max_involution_n) {
        throw ResourceLimitError(
            "involution enumeration capped at n <= " +
            std::to_string(limits.max_involution_n));
      }
      return;
    case LawKind::cycle_type:
    case LawKind::mixture:
      for (const auto& [type, weight] : law.components()) {
        if (type.class_size() > limits.max_class_size) {
          throw ResourceLimitError(
              "cycle-type class size exceeds the enumeration cap");
        }
      }
      return;
  }
  throw std::logic_error("unknown law kind");
}

void fpf_involution_rec(Permutation& perm, std::vector<bool>& matched,
                        std::size_t n,
                        const std::function<void(const Permutation&)>& fn) {
  std::size_t first = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!matched[i]) {
      first = i;
      break;
    }
  }
  if (first == n) {
    fn(perm);
    return;
  }
  matched[first] = true;
  for (std::size_t j = first + 1; j < n; ++j) {
    if (matched[j]) {
      continue;
    }
    matched[j] = true;
    perm[first] = j;
    perm[j] = first;
    fpf_involution_rec(perm, matched, n, fn);
    matched[j] = false;
  }
  matched[first] = false;
}

// Enumeration of one conjugacy class: the cycle containing the smallest
// unused element determines its own length, so choosing that length from the
// remaining counts and then an ordered tuple for the rest of the cycle
// visits every permutation of the type exactly once.
struct TypeEnumerator {
  const std::function<void(const Permutation&)>& fn;
  Permutation perm;
  std::vector<bool> used;
  std::vector<std::size_t> remaining;  // remaining[q-1] cycles of length q
  std::size_t n = 0;

  void run() {
    std::size_t start = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!used[i]) {
        start = i;
        break;
      }
    }
    if (start == n) {
      fn(perm);
      return;
    }
    used[start] = true;
    for (std::size_t q = 1; q <= n; ++q) {
      if (remaining[q - 1] == 0) {
        continue;
      }
      remaining[q - 1] -= 1;
      extend_cycle(start, start, q - 1);
      remaining[q - 1] += 1;
    }
    used[start] = false;
  }

  void extend_cycle(std::size_t start, std::size_t prev, std::size_t left) {
    if (left == 0) {
      perm[prev] = start;
      run();
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) {
        continue;
      }
      used[j] = true;
      perm[prev] = j;
      extend_cycle(start, j, left - 1);
      used[j] = false;
    }
  }
};

// One enumerated class with its mixture weight and the sorted deviations
// y - mu (mu is the whole law's mean, so mixture tails combine directly).
struct ClassDeviations {
  double weight = 1.0;
  std::vector<double> devs;      // ascending
  std::vector<double> abs_devs;  // ascending
};

struct LawSamples {
  double mu = 0.0;
  std::uint64_t total = 0;
  std::vector<ClassDeviations> classes;

  double tail(double t) const {
    double sum = 0.0;
    for (const auto& cls : classes) {
      const auto at = std::lower_bound(cls.devs.begin(), cls.devs.end(), t);
      sum += cls.weight *
             static_cast<double>(cls.devs.end() - at) / cls.devs.size();
    }
    return sum;
  }

  double tail_two_sided(double t) const {
    double sum = 0.0;
    for (const auto& cls : classes) {
      const auto at =
          std::lower_bound(cls.abs_devs.begin(), cls.abs_devs.end(), t);
      sum += cls.weight *
             static_cast<double>(cls.abs_devs.end() - at) / cls.devs.size();
    }
    return sum;
  }
};

std::vector<std::pair<double, std::vector<double>>> class_values(
    const SquareMatrix& a, const PermLaw& law, const EnumLimits& limits) {
  check_class_limits(law, limits);
  std::vector<std::pair<double, std::vector<double>>> out;
  auto collect = [&a](std::vector<double>& values) {
    return [&a, &values](const Permutation& p) {
      values.push_back(stat_of(a, p));
    };
  };
  switch (law.kind()) {
    case LawKind::uniform: {
      std::vector<double> values;
      for_each_permutation(law.n(), collect(values));
      out.emplace_back(1.0, std::move(values));
      return out;
    }
    case LawKind::fpf_involution: {
      std::vector<double> values;
      for_each_fpf_involution(law.n(), collect(values));
      out.emplace_back(1.0, std::move(values));
      return out;
    }
    case LawKind::cycle_type:
    case LawKind::mixture: {
      for (const auto& [type, weight] : law.components()) {
        std::vector<double> values;
        for_each_of_type(type, collect(values));
        out.emplace_back(weight, std::move(values));
      }
      return out;
    }
  }
  throw std::logic_error("unknown law kind");
}

LawSamples build_law_samples(const SquareMatrix& a, const PermLaw& law,
                             const EnumLimits& limits) {
  auto classes = class_values(a, law, limits);
  LawSamples samples;
  for (const auto& [weight, values] : classes) {
    long double sum = 0.0L;
    for (double y : values) {
      sum += y;
    }
    samples.mu += weight * static_cast<double>(sum / values.size());
    samples.total += values.size();
  }
  for (auto& [weight, values] : classes) {
    ClassDeviations cls;
    cls.weight = weight;
    cls.devs.reserve(values.size());
    for (double y : values) {
      cls.devs.push_back(y - samples.mu);
    }
    std::sort(cls.devs.begin(), cls.devs.end());
    cls.abs_devs.reserve(values.size());
    for (double d : cls.devs) {
      cls.abs_devs.push_back(std::abs(d));
    }
    std::sort(cls.abs_devs.begin(), cls.abs_devs.end());
    samples.classes.push_back(std::move(cls));
  }
  return samples;
}

TailEstimate exact_estimate(double point, std::uint64_t total) {
  TailEstimate est;
  est.point = point;
  est.ci_low = point;
  est.ci_high = point;
  est.trials = total;
  est.method = TailMethod::exact;
  return est;
}

// Monte Carlo deviations y - mu, written into fixed per-block slices so the
// content is independent of the thread count.
std::vector<double> mc_deviations(const SquareMatrix& a, const PermLaw& law,
                                  const McOptions& opts) {
  if (opts.trials == 0) {
    throw std::domain_error("Monte Carlo needs trials >= 1");
  }
  const double mu = law_moments(a, law).mean;
  const std::uint64_t blocks = (opts.trials + kMcBlock - 1) / kMcBlock;
  std::vector<double> devs(opts.trials);
  parallel_blocks(blocks, opts.threads, [&](std::size_t b) {
    Rng rng(opts.seed, b);
    const std::uint64_t begin = b * kMcBlock;
    const std::uint64_t end = std::min(opts.trials, begin + kMcBlock);
    for (std::uint64_t k = begin; k < end; ++k) {
      devs[k] = stat_of(a, law.sample(rng)) - mu;
    }
  });
  return devs;
}

TailEstimate mc_estimate_from_count(std::uint64_t hits, std::uint64_t trials,
                                    double level) {
  TailEstimate est;
  est.point = static_cast<double>(hits) / trials;
  const Interval ci = clopper_pearson(hits, trials, level);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  est.trials = trials;
  est.method = TailMethod::monte_carlo;
  return est;
}

}  // namespace

void for_each_permutation(std::size_t n,
                          const std::function<void(const Permutation&)>& fn) {
  if (n == 0) {
    throw std::domain_error("enumeration needs n >= 1");
  }
  Permutation perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    fn(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

void for_each_fpf_involution(
    std::size_t n, const std::function<void(const Permutation&)>& fn) {
  if (n < 2 || n % 2 != 0) {
    throw std::domain_error("fixed-point-free involutions need even n >= 2");
  }
  Permutation perm(n);
  std::vector<bool> matched(n, false);
  fpf_involution_rec(perm, matched, n, fn);
}

void for_each_of_type(const CycleType& f,
                      const std::function<void(const Permutation&)>& fn) {
  TypeEnumerator enumerator{fn, Permutation(f.n()),
                            std::vector<bool>(f.n(), false), f.counts(),
                            f.n()};
  enumerator.run();
}

std::vector<Permutation> enumerate_class(const PermLaw& law,
                                         const EnumLimits& limits) {
  if (law.kind() == LawKind::mixture) {
    throw std::domain_error(
        "mixtures have no single class; enumerate each component type");
  }
  check_class_limits(law, limits);
  std::vector<Permutation> out;
  auto collect = [&out](const Permutation& p) { out.push_back(p); };
  switch (law.kind()) {
    case LawKind::uniform:
      for_each_permutation(law.n(), collect);
      break;
    case LawKind::fpf_involution:
      for_each_fpf_involution(law.n(), collect);
      break;
    case LawKind::cycle_type:
      for_each_of_type(law.type(), collect);
      break;
    case LawKind::mixture:
      break;  // unreachable
  }
  return out;
}

LawMoments exact_moments(const SquareMatrix& a, const PermLaw& law,
                         const EnumLimits& limits) {
  if (law.n() != a.n()) {
    throw std::domain_error("law size must match the matrix");
  }
  const LawSamples samples = build_law_samples(a, law, limits);
  LawMoments out;
  out.mean = samples.mu;
  for (const auto& cls : samples.classes) {
    long double sum_sq = 0.0L;
    for (double d : cls.devs) {
      sum_sq += static_cast<long double>(d) * d;
    }
    out.variance +=
        cls.weight * static_cast<double>(sum_sq / cls.devs.size());
  }
  return out;
}

TailEstimate exact_tail(const SquareMatrix& a, const PermLaw& law, double t,
                        const EnumLimits& limits) {
  if (law.n() != a.n()) {
    throw std::domain_error("law size must match the matrix");
  }
  const LawSamples samples = build_law_samples(a, law, limits);
  return exact_estimate(samples.tail(t), samples.total);
}

TailEstimate exact_tail_two_sided(const SquareMatrix& a, const PermLaw& law,
                                  double t, const EnumLimits& limits) {
  if (law.n() != a.n()) {
    throw std::domain_error("law size must match the matrix");
  }
  const LawSamples samples = build_law_samples(a, law, limits);
  return exact_estimate(samples.tail_two_sided(t), samples.total);
}

TailEstimate mc_tail(const SquareMatrix& a, const PermLaw& law, double t,
                     const McOptions& opts) {
  const std::vector<double> devs = mc_deviations(a, law, opts);
  std::uint64_t hits = 0;
  for (double d : devs) {
    if (d >= t) {
      ++hits;
    }
  }
  return mc_estimate_from_count(hits, opts.trials, opts.level);
}

TailEstimate mc_tail_two_sided(const SquareMatrix& a, const PermLaw& law,
                               double t, const McOptions& opts) {
  const std::vector<double> devs = mc_deviations(a, law, opts);
  std::uint64_t hits = 0;
  for (double d : devs) {
    if (std::abs(d) >= t) {
      ++hits;
    }
  }
  return mc_estimate_from_count(hits, opts.trials, opts.level);
}

double chernoff_tail(const DiscreteDist& d, double t) {
  if (!d.is_mean_zero()) {
    throw std::domain_error("the optimized bound requires a mean-zero input");
  }
  if (!std::isfinite(t) || t < 0) {
    throw std::domain_error("the optimized bound requires finite t >= 0");
  }
  if (t > d.max_value()) {
    return 0.0;  // the infimum, approached as s grows without bound
  }
  if (t == d.max_value()) {
    return d.prob_at_max();
  }
  if (t == 0) {
    return 1.0;  // s = 0 is optimal at the mean
  }
  const auto& atoms = d.atoms();
  // log E[e^{sY}] - s t, evaluated in log space to survive large s.
  auto objective = [&atoms, t](double s) {
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& [value, prob] : atoms) {
      top = std::max(top, std::log(prob) + s * value);
    }
    double sum = 0.0;
    for (const auto& [value, prob] : atoms) {
      sum += std::exp(std::log(prob) + s * value - top);
    }
    return top + std::log(sum) - s * t;
  };
  auto tilted_mean = [&atoms](double s) {
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& [value, prob] : atoms) {
      top = std::max(top, std::log(prob) + s * value);
    }
    double total = 0.0;
    double weighted = 0.0;
    for (const auto& [value, prob] : atoms) {
      const double w = std::exp(std::log(prob) + s * value - top);
      total += w;
      weighted += w * value;
    }
    return weighted / total;
  };
  // The objective is convex with derivative tilted_mean(s) - t, negative at
  // s = 0. Expand until the derivative turns non-negative, then refine by
  // golden section.
  double lo = 0.0;
  double hi = 1.0;
  while (tilted_mean(hi) < t && hi < 1e15) {
    lo = hi;
    hi *= 2.0;
  }
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  for (int iter = 0; iter < 400 && hi - lo > 1e-12 * std::max(1.0, hi);
       ++iter) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = objective(x2);
    }
  }
  // g(0) = 0, so the infimum never exceeds 1.
  return std::exp(std::min(0.0, objective((lo + hi) / 2.0)));
}

Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials,
                         double level) {
  if (trials == 0) {
    throw std::domain_error("interval needs trials >= 1");
  }
  if (successes > trials) {
    throw std::domain_error("successes cannot exceed trials");
  }
  if (!(level > 0 && level < 1)) {
    throw std::domain_error("confidence level must lie in (0, 1)");
  }
  const double alpha = 1.0 - level;
  const auto s = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  Interval out;
  out.low = successes == 0
                ? 0.0
                : boost::math::ibeta_inv(s, n - s + 1.0, alpha / 2.0);
  out.high = successes == trials
                 ? 1.0
                 : boost::math::ibeta_inv(s + 1.0, n - s, 1.0 - alpha / 2.0);
  return out;
}

double dkw_epsilon(std::uint64_t n, double level) {
  if (n == 0) {
    throw std::domain_error("band needs n >= 1");
  }
  if (!(level > 0 && level < 1)) {
    throw std::domain_error("confidence level must lie in (0, 1)");
  }
  return std::sqrt(std::log(2.0 / (1.0 - level)) / (2.0 * static_cast<double>(n)));
}

DominationReport validate_domination(const SquareMatrix& a, const PermLaw& law,
                                     const std::vector<double>& t_grid,
                                     const std::vector<BoundKind>& kinds,
                                     const DominationOptions& opts) {
  DominationReport report;

  // Tail source, shared across the grid. Every kind bounds the upper tail
  // P(Y - mean >= t) — the two_sided kind differs only in its coupling
  // hypothesis (|Y* - Y| <= c instead of Y* - Y <= c), not in which tail it
  // controls.
  LawSamples exact_samples;
  std::vector<double> mc_devs;
  if (opts.use_monte_carlo) {
    McOptions mc;
    mc.trials = opts.trials;
    mc.seed = opts.seed;
    mc.threads = opts.threads;
    mc.level = opts.level;
    mc_devs = mc_deviations(a, law, mc);
    std::sort(mc_devs.begin(), mc_devs.end());
  } else {
    exact_samples = build_law_samples(a, law, opts.limits);
  }

  auto count_at_least = [](const std::vector<double>& sorted, double t) {
    return static_cast<std::uint64_t>(
        sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), t));
  };

  for (double t : t_grid) {
    for (BoundKind kind : kinds) {
      DominationRow row;
      row.t = t;
      row.kind = kind;
      const BoundValue value = tail_bound(a, law, t, kind);
      row.applicable = value.applicable;
      if (opts.use_monte_carlo) {
        const TailEstimate est = mc_estimate_from_count(
            count_at_least(mc_devs, t), opts.trials, opts.level);
        row.tail = est.point;
        row.ci_low = est.ci_low;
        row.ci_high = est.ci_high;
      } else {
        row.tail = exact_samples.tail(t);
        row.ci_low = row.tail;
        row.ci_high = row.tail;
      }
      if (value.applicable) {
        row.bound = value.clamped * opts.bound_scale;
        // Monte Carlo rows must beat the upper confidence limit, not just
        // the point estimate.
        const double comparison =
            opts.use_monte_carlo ? row.ci_high : row.tail;
        row.satisfied = comparison <= row.bound + kDominationSlack;
        row.margin = row.bound - comparison;
        report.pass = report.pass && row.satisfied;
      } else {
        row.bound = std::numeric_limits<double>::quiet_NaN();
        row.satisfied = true;  // reported, never counted as a failure
        row.margin = std::numeric_limits<double>::quiet_NaN();
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

MomentExperiment expected_moment_experiment(
    std::size_t n, const std::optional<DiscreteDist>& entry_dist,
    std::uint64_t reps, std::uint64_t seed, unsigned threads) {
  if (n < 2) {
    throw std::domain_error("matrix experiment needs n >= 2");
  }
  if (reps == 0) {
    throw std::domain_error("matrix experiment needs reps >= 1");
  }
  double entry_mean = 0.5;
  double entry_var = 1.0 / 12.0;
  if (entry_dist) {
    if (entry_dist->min_value() < 0.0 || entry_dist->max_value() > 1.0) {
      throw std::domain_error("entry distribution must live in [0, 1]");
    }
    const Moments m = entry_dist->moments();
    entry_mean = m.mean;
    entry_var = m.variance;
  }

  constexpr std::uint64_t kRepsPerBlock = 256;
  const std::uint64_t blocks = (reps + kRepsPerBlock - 1) / kRepsPerBlock;
  struct BlockSums {
    long double var = 0, var_sq = 0, mean = 0, mean_sq = 0;
  };
  std::vector<BlockSums> partial(blocks);
  parallel_blocks(blocks, threads, [&](std::size_t b) {
    Rng rng(seed, b);
    const std::uint64_t begin = b * kRepsPerBlock;
    const std::uint64_t end = std::min(reps, begin + kRepsPerBlock);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    BlockSums sums;
    for (std::uint64_t r = begin; r < end; ++r) {
      for (auto& row : rows) {
        for (double& entry : row) {
          entry = entry_dist ? entry_dist->sample(rng) : rng.unit();
        }
      }
      const LawMoments m = moments_uniform(SquareMatrix(rows));
      sums.var += m.variance;
      sums.var_sq += static_cast<long double>(m.variance) * m.variance;
      sums.mean += m.mean;
      sums.mean_sq += static_cast<long double>(m.mean) * m.mean;
    }
    partial[b] = sums;
  });
  BlockSums total;
  for (const auto& sums : partial) {
    total.var += sums.var;
    total.var_sq += sums.var_sq;
    total.mean += sums.mean;
    total.mean_sq += sums.mean_sq;
  }

  MomentExperiment out;
  out.reps = reps;
  out.mean_variance = static_cast<double>(total.var / reps);
  out.mean_mean = static_cast<double>(total.mean / reps);
  out.target_variance = static_cast<double>(n - 1) * entry_var;
  out.target_mean = static_cast<double>(n) * entry_mean;
  if (reps > 1) {
    const auto sample_sd = [reps](long double sum, long double sum_sq) {
      const long double mean = sum / reps;
      const long double var =
          (sum_sq / reps - mean * mean) * reps / (reps - 1.0L);
      return std::sqrt(std::max<long double>(var, 0.0L) / reps);
    };
    out.se_variance = static_cast<double>(sample_sd(total.var, total.var_sq));
    out.se_mean = static_cast<double>(sample_sd(total.mean, total.mean_sq));
  }
  return out;
}

}  // namespace zbtail
