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

#ifndef LPPROJ_VERIFY_TAIL_HPP_
#define LPPROJ_VERIFY_TAIL_HPP_

#include <cstdint>
#include <optional>

#include "lpproj/extended_real.hpp"
#include "lpproj/sampling/types.hpp"

namespace lpproj {

/// Closed interval [a, b]; b may be +infinity for a ray.
struct Interval {
  double a = 0.0;
  ExtendedReal b = kInfinity;

  bool contains(double v) const { return v >= a && ExtendedReal(v) <= b; }
  /// Throws std::invalid_argument unless a < b.
  void validate() const;
};

/// Which sampler feeds the estimate.
struct QuantityConfig {
  Quantity quantity = Quantity::kScaledNorm;
  std::int64_t n = 2;
  std::int64_t k = 1;
  PExponent p = PExponent(2.0);
  Method method = Method::kProduct;
};

struct TailEstimate {
  Interval interval;
  std::int64_t n = 0;
  std::int64_t k = 0;
  PExponent p = PExponent(2.0);
  std::int64_t hits = 0;
  std::int64_t trials = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  double level = 0.99;
};

struct ConfidenceInterval {
  double low;
  double high;
};

/// Clopper-Pearson interval for hits out of trials. With no hits (or no
/// misses) the open side gets the one-sided bound at the full level.
ConfidenceInterval clopper_pearson(std::int64_t hits, std::int64_t trials, double level = 0.99);

/// Monte Carlo hit count of the interval, chunked exactly like
/// generate_batch so the same seed sees the same draws.
TailEstimate estimate_interval_probability(const QuantityConfig& cfg, const Interval& interval, std::int64_t trials,
                                           std::uint64_t seed, int workers = 1, double level = 0.99);

struct EmpiricalRate {
  /// -log(p_hat) / speed; absent when there are no hits.
  std::optional<double> rate;
  /// -log(ci_high) / speed; always finite.
  double rate_low = 0.0;
  /// -log(ci_low) / speed; absent when ci_low = 0.
  std::optional<double> rate_high;
};

EmpiricalRate empirical_rate(const TailEstimate& estimate, double speed_value);

}  // namespace lpproj

#endif  // LPPROJ_VERIFY_TAIL_HPP_
