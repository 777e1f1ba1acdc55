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

#ifndef LPPROJ_VERIFY_LDP_HPP_
#define LPPROJ_VERIFY_LDP_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpproj/rates/rates.hpp"
#include "lpproj/sampling/types.hpp"
#include "lpproj/verify/tail.hpp"

namespace lpproj {

struct LdpConfig {
  RateName rate = RateName::kRateProjection;
  std::optional<PExponent> p;
  double lambda = 0.5;
  /// Rule producing k_n; its limit ratio need not equal `lambda`.
  ScheduleSpec schedule;
  Interval interval;
  std::vector<std::int64_t> n_schedule;
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
  int workers = 1;
  /// Use the Beta oracle (rate_V) or the radial quadrature oracle (rate_V1,
  /// and rate_projection at p = 2) instead of Monte Carlo.
  bool use_exact_oracle = false;
  double tolerance = 0.05;
  double level = 0.99;
  Method method = Method::kProduct;
  RateOptions rate_options;
};

struct LdpRow {
  std::int64_t n = 0;
  std::int64_t k = 0;
  double p_hat = 0.0;
  /// Set on the exact-oracle path, where p_hat may underflow.
  std::optional<double> log_p_hat;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::int64_t hits = 0;
  /// 0 for exact-oracle rows.
  std::int64_t trials = 0;
  double speed_value = 1.0;
  std::optional<double> empirical_rate;
  /// Finite lower rate bound from ci_high; informative when no hits.
  double rate_lower_bound = 0.0;
  ExtendedReal theoretical_rate;
};

struct LdpReport {
  std::string rate_name;
  std::optional<PExponent> p;
  double lambda = 0.0;
  Interval interval;
  std::vector<LdpRow> rows;
  bool verdict = false;
  double tolerance = 0.0;
  std::vector<std::string> warnings;
};

/// The sampler whose law the named rate describes.
Quantity quantity_for_rate(RateName rate);

/// Infimum of the rate over [a, b], by minimize_scalar. A ray is searched
/// up to the point where the rate is infinite or a fixed span beyond a.
ExtendedReal rate_infimum(RateName rate, const std::optional<PExponent>& p, double lambda, double a,
                          const ExtendedReal& b, const RateOptions& opts = {});

/// Runs the schedule. Verdict: the last empirical rate is within
/// `tolerance` (relative) of the theoretical one, and |empirical -
/// theoretical| does not increase over the last three rows.
LdpReport run_ldp_convergence(const LdpConfig& cfg);

/// {rate_name, p, lambda, interval, rows, verdict, tolerance, warnings}.
std::string ldp_report_json(const LdpReport& report);
void validate_ldp_report_json(const std::string& json);

}  // namespace lpproj

#endif  // LPPROJ_VERIFY_LDP_HPP_
