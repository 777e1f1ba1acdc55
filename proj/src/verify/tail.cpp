// Copyright 2026 The lpproj Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lpproj/verify/tail.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lpproj/numerics/special.hpp"
#include "lpproj/sampling/batch.hpp"

namespace lpproj {

namespace {

// x with I_x(a, b) = target, by bisection in log x so tiny quantiles keep
// their relative accuracy.
double beta_quantile(double target, double a, double b) {
  double lo = -745.0;
  double hi = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (regularized_incomplete_beta(std::exp(mid), a, b) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace

void Interval::validate() const {
  if (!std::isfinite(a) || !(ExtendedReal(a) < b)) throw std::invalid_argument("interval: need a < b");
}

ConfidenceInterval clopper_pearson(std::int64_t hits, std::int64_t trials, double level) {
  if (trials < 1 || hits < 0 || hits > trials) throw std::invalid_argument("clopper_pearson: bad counts");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("clopper_pearson: level must lie in (0, 1)");
  const double alpha = 1.0 - level;
  const double n = static_cast<double>(trials);
  const double h = static_cast<double>(hits);
  if (hits == 0) return {0.0, -std::expm1(std::log(alpha) / n)};
  if (hits == trials) return {std::exp(std::log(alpha) / n), 1.0};
  return {beta_quantile(0.5 * alpha, h, n - h + 1.0), beta_quantile(1.0 - 0.5 * alpha, h + 1.0, n - h)};
}

TailEstimate estimate_interval_probability(const QuantityConfig& cfg, const Interval& interval, std::int64_t trials,
                                           std::uint64_t seed, int workers, double level) {
  if (trials < 1) throw std::invalid_argument("estimate_interval_probability: trials must be >= 1");
  interval.validate();
  const std::int64_t chunks = (trials + kChunkSize - 1) / kChunkSize;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(chunks), 0);
  parallel_chunks(trials, workers, [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
    DrawEngines engines = chunk_engines(seed, chunk, cfg.quantity, cfg.method);
    std::int64_t c = 0;
    for (std::int64_t i = begin; i < end; ++i) {
      if (interval.contains(sample_quantity(cfg.quantity, cfg.n, cfg.k, cfg.p, cfg.method, engines))) ++c;
    }
    counts[static_cast<std::size_t>(chunk)] = c;
  });

  TailEstimate est;
  est.interval = interval;
  est.n = cfg.n;
  est.k = cfg.k;
  est.p = cfg.p;
  est.trials = trials;
  for (auto c : counts) est.hits += c;
  est.p_hat = static_cast<double>(est.hits) / static_cast<double>(trials);
  const auto ci = clopper_pearson(est.hits, trials, level);
  est.ci_low = std::min(ci.low, est.p_hat);
  est.ci_high = std::max(ci.high, est.p_hat);
  est.level = level;
  return est;
}

EmpiricalRate empirical_rate(const TailEstimate& estimate, double speed_value) {
  if (!(speed_value > 0.0)) throw std::invalid_argument("empirical_rate: speed must be positive");
  EmpiricalRate r;
  if (estimate.p_hat > 0.0) r.rate = std::max(0.0, -std::log(estimate.p_hat) / speed_value);
  r.rate_low = std::max(0.0, -std::log(estimate.ci_high) / speed_value);
  if (estimate.ci_low > 0.0) r.rate_high = std::max(0.0, -std::log(estimate.ci_low) / speed_value);
  return r;
}

}  // namespace lpproj
