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

#ifndef LPPROJ_RATES_RATES_HPP_
#define LPPROJ_RATES_RATES_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpproj/extended_real.hpp"
#include "lpproj/sampling/types.hpp"

namespace lpproj {

/// Search ranges and tolerances for the nested infima.
struct RateOptions {
  /// Range of x2 = mean of |Z|^p scanned on the W constraint curve.
  double x2_min = 1e-6;
  double x2_max = 1e6;
  /// Upper end of the outer search in rate_projection; 0 picks
  /// 10 * max(1, sqrt(m_p)).
  double x_max = 0.0;
  /// Argument tolerance of minimize_scalar.
  double tolerance = 1e-9;
  int grid_points = 64;
};

/// -log y on (0, 1].
ExtendedReal rate_U(double y);

/// Rate of the Gaussian factor V for limit ratio lambda = lim k/n.
ExtendedReal rate_V(double lambda, double y);

/// Rate of U^{1/n} V by contraction over the factorization x1 * x2 = y.
ExtendedReal rate_V1(double lambda, double y, const RateOptions& opts = {});

/// Rate of the ratio W of quadratic to p-th power means, p in [2, inf].
ExtendedReal rate_W(const PExponent& p, double y, const RateOptions& opts = {});

/// Rate of n^{1/p - 1/2} ||P_E X||_2. Throws UnsupportedRegimeError for
/// p < 2 with lambda = 0.
ExtendedReal rate_projection(const PExponent& p, double lambda, double y, const RateOptions& opts = {});

/// (1/p)(y - m_p)^{p/2} for y >= m_p, p in [1, 2).
ExtendedReal rate_Z2_sum(const PExponent& p, double y);

/// (y - 1)/2 - log(y)/2 for y > 0.
ExtendedReal rate_G_mean(double y);

/// Conjugate of log E exp(t |Z|^p).
ExtendedReal rate_Zp_mean(const PExponent& p, double y);

/// The two written forms of the p >= 2 infimand, for cross-checks only:
/// kScaledRatio uses lambda/2 log(lambda x^2 / y^2), kScaledPrefactor uses
/// lambda/(2 x^2) log(lambda / y^2). Both add
/// (1-lambda)/2 log((1-lambda)/(1 - y^2/x^2)) + J_p(x).
enum class DisplayVariant { kScaledRatio, kScaledPrefactor };
ExtendedReal rate_projection_display(const PExponent& p, double lambda, double y, DisplayVariant variant,
                                     const RateOptions& opts = {});

enum class RateName {
  kRateU,
  kRateV,
  kRateV1,
  kRateW,
  kRateProjection,
  kRateZ2Sum,
  kRateGMean,
  kRateZpMean,
};

std::string_view to_string(RateName name);
RateName parse_rate_name(std::string_view text);
bool rate_needs_p(RateName name);
bool rate_needs_lambda(RateName name);

struct RateQuery {
  RateName name = RateName::kRateU;
  std::optional<PExponent> p;
  std::optional<double> lambda;
  double y = 0.0;

  /// Throws std::invalid_argument unless p and lambda are present exactly
  /// when the name needs them, with lambda in [0, 1].
  void validate() const;
};

ExtendedReal evaluate(const RateQuery& query, const RateOptions& opts = {});

enum class SpeedKind { kN, kNPowPHalf, kKn };

struct Speed {
  SpeedKind kind = SpeedKind::kN;
  /// p/2 for kNPowPHalf, 1 otherwise.
  double exponent = 1.0;

  /// s(n); k is used only by kKn.
  double value(std::int64_t n, std::int64_t k) const;
  std::string to_string() const;
};

/// The speed at which the named rate governs its sequence.
Speed speed_for(RateName name, const std::optional<PExponent>& p);

struct RateCurvePoint {
  double y;
  ExtendedReal value;
};

struct RateCurve {
  RateName name = RateName::kRateU;
  std::optional<PExponent> p;
  std::optional<double> lambda;
  Speed speed;
  std::vector<RateCurvePoint> grid;
};

/// Evaluates the rate on ys, which must be strictly increasing.
/// Points are independent and run on up to `workers` threads.
RateCurve evaluate_curve(RateName name, const std::optional<PExponent>& p, const std::optional<double>& lambda,
                         const std::vector<double>& ys, int workers = 1, const RateOptions& opts = {});

/// `count` points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int count);

/// CSV with header `y,value`; +infinity is written as `inf`.
std::string rate_curve_csv(const RateCurve& curve);
/// Sidecar {name, p, lambda, speed}.
std::string rate_curve_metadata_json(const RateCurve& curve);

/// Returns the number of rows; throws std::runtime_error on a malformed file.
std::size_t validate_rate_curve_csv(const std::string& csv);
void validate_rate_curve_metadata_json(const std::string& json);

}  // namespace lpproj

#endif  // LPPROJ_RATES_RATES_HPP_
