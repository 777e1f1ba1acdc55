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

#include "lpproj/rates/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "lpproj/numerics/conjugate.hpp"
#include "lpproj/numerics/errors.hpp"
#include "lpproj/numerics/minimize.hpp"
#include "lpproj/rates/cgf.hpp"

namespace lpproj {

namespace {

ExtendedReal nonnegative(double v) { return ExtendedReal(std::max(v, 0.0)); }

void require_lambda(double lambda, const char* who) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument(std::string(who) + ": lambda must lie in [0, 1]");
}

// Typical value of W: sqrt(m_p), and sqrt(1/3) for the cube.
double typical_w(const PExponent& p) { return p.is_infinite() ? std::sqrt(1.0 / 3.0) : std::sqrt(moment_m(p)); }

ExtendedReal rate_W_finite(double p, double y, const RateOptions& opts) {
  const Cgf2D cgf = cgf_pair_function(PExponent(p));
  const double y2 = y * y;
  // An unconverged ascent still gives a lower bound on the conjugate. It is
  // harmless unless that bound undercuts the minimum.
  std::optional<NonConvergenceError> lowest_failure;
  auto objective = [&](double u) {
    const double x2 = std::exp(u);
    const Eigen::Vector2d x(y2 * std::exp(2.0 * u / p), x2);
    try {
      return legendre_fenchel_2d(cgf, x);
    } catch (const NonConvergenceError& e) {
      if (!lowest_failure || e.estimate() < lowest_failure->estimate()) lowest_failure = e;
      return ExtendedReal(e.estimate());
    }
  };
  const auto r = minimize_scalar(objective, std::log(opts.x2_min), std::log(opts.x2_max), opts.tolerance,
                                 opts.grid_points);
  if (lowest_failure && !(r.min < ExtendedReal(lowest_failure->estimate()))) throw *lowest_failure;
  if (r.min.is_infinite()) return kInfinity;
  return nonnegative(r.min.value());
}

}  // namespace

ExtendedReal rate_U(double y) {
  if (!(y > 0.0 && y <= 1.0)) return kInfinity;
  return nonnegative(-std::log(y));
}

ExtendedReal rate_V(double lambda, double y) {
  require_lambda(lambda, "rate_V");
  if (lambda == 0.0) {
    if (!(y >= 0.0 && y < 1.0)) return kInfinity;
    return nonnegative(-0.5 * std::log1p(-y * y));
  }
  if (lambda == 1.0) {
    if (!(y > 0.0 && y <= 1.0)) return kInfinity;
    return nonnegative(-std::log(y));
  }
  if (!(y > 0.0 && y < 1.0)) return kInfinity;
  return nonnegative(0.5 * lambda * std::log(lambda / (y * y)) +
                     0.5 * (1.0 - lambda) * std::log((1.0 - lambda) / (1.0 - y * y)));
}

ExtendedReal rate_V1(double lambda, double y, const RateOptions& opts) {
  require_lambda(lambda, "rate_V1");
  if (!(y >= 0.0 && y <= 1.0)) return kInfinity;
  auto objective = [&](double x1) { return rate_U(x1) + rate_V(lambda, y / x1); };
  const double lo = std::max(y, 1e-12);
  if (lo >= 1.0) return objective(1.0);
  const auto r = minimize_scalar(objective, lo, 1.0, opts.tolerance, opts.grid_points);
  if (r.min.is_infinite()) return kInfinity;
  return nonnegative(r.min.value());
}

ExtendedReal rate_W(const PExponent& p, double y, const RateOptions& opts) {
  if (!(y > 0.0)) return kInfinity;
  if (p.is_infinite()) {
    if (y >= 1.0) return kInfinity;
    static const Cgf1D centered = cgf_infty_centered_function();
    const ExtendedReal v = legendre_fenchel_1d(centered, y * y);
    return v.is_infinite() ? v : nonnegative(v.value());
  }
  const double q = p.value();
  if (q < 2.0) throw std::invalid_argument("rate_W: p must be >= 2");
  if (q == 2.0) return y == 1.0 ? ExtendedReal(0.0) : kInfinity;
  if (y >= 1.0) return kInfinity;
  return rate_W_finite(q, y, opts);
}

ExtendedReal rate_projection(const PExponent& p, double lambda, double y, const RateOptions& opts) {
  require_lambda(lambda, "rate_projection");
  if (p.is_finite() && p.value() < 2.0) {
    if (lambda == 0.0) {
      throw UnsupportedRegimeError("rate_projection: p < 2 with lambda = 0 is not covered");
    }
    if (!(y >= 0.0)) return kInfinity;
    const double q = p.value();
    const double m = moment_m(p);
    // Gap to the typical value sqrt(lambda m); rounding-level gaps count as zero.
    const double gap = y * y / lambda - m;
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * m;
    if (gap < -slack) return kInfinity;
    if (gap <= slack) return ExtendedReal(0.0);
    return nonnegative(std::pow(gap, q / 2.0) / q);
  }
  if (!(y >= 0.0)) return kInfinity;
  if (y == 0.0) return lambda == 0.0 ? ExtendedReal(0.0) : rate_W(p, 0.0, opts);
  if (p.is_finite() && p.value() == 2.0) return rate_V1(lambda, y, opts);

  // W never exceeds 1 (power-mean inequality), so J_p is infinite beyond it.
  const double x_max = std::min(1.0, opts.x_max > 0.0 ? opts.x_max : 10.0 * std::max(1.0, typical_w(p)));
  const double lo = std::max(y, 1e-8);
  if (!(lo < x_max)) return kInfinity;
  auto objective = [&](double x) { return rate_V1(lambda, y / x, opts) + rate_W(p, x, opts); };
  const auto r = minimize_scalar(objective, lo, x_max, opts.tolerance, opts.grid_points);
  if (r.min.is_infinite()) return kInfinity;
  return nonnegative(r.min.value());
}

ExtendedReal rate_projection_display(const PExponent& p, double lambda, double y, DisplayVariant variant,
                                     const RateOptions& opts) {
  require_lambda(lambda, "rate_projection_display");
  if (p.is_finite() && p.value() < 2.0) throw std::invalid_argument("rate_projection_display: p must be >= 2");
  if (!(y > 0.0)) return rate_projection(p, lambda, y, opts);

  auto infimand = [&](double x) -> ExtendedReal {
    const double r = y / x;
    if (variant == DisplayVariant::kScaledRatio) return rate_V(lambda, r) + rate_W(p, x, opts);
    if (r > 1.0 || (r == 1.0 && lambda < 1.0)) return kInfinity;
    double v = 0.0;
    if (lambda > 0.0) v += lambda / (2.0 * x * x) * std::log(lambda / (y * y));
    if (lambda < 1.0) v += 0.5 * (1.0 - lambda) * std::log((1.0 - lambda) / (1.0 - r * r));
    return ExtendedReal(v) + rate_W(p, x, opts);
  };
  if (p.is_finite() && p.value() == 2.0) {
    if (y > 1.0) return kInfinity;
    const ExtendedReal v = infimand(1.0);
    return v.is_infinite() ? v : nonnegative(v.value());
  }
  const double x_max = std::min(1.0, opts.x_max > 0.0 ? opts.x_max : 10.0 * std::max(1.0, typical_w(p)));
  if (!(y < x_max)) return kInfinity;
  const auto r = minimize_scalar(infimand, y, x_max, opts.tolerance, opts.grid_points);
  return r.min;
}

ExtendedReal rate_Z2_sum(const PExponent& p, double y) {
  if (p.is_infinite() || p.value() >= 2.0) throw std::invalid_argument("rate_Z2_sum: p must lie in [1, 2)");
  const double m = moment_m(p);
  if (!(y >= m)) return kInfinity;
  return nonnegative(std::pow(y - m, p.value() / 2.0) / p.value());
}

ExtendedReal rate_G_mean(double y) {
  if (!(y > 0.0)) return kInfinity;
  return nonnegative(0.5 * (y - 1.0) - 0.5 * std::log(y));
}

ExtendedReal rate_Zp_mean(const PExponent& p, double y) {
  if (p.is_infinite()) throw std::invalid_argument("rate_Zp_mean: p must be finite");
  if (!(y > 0.0)) return kInfinity;
  const ExtendedReal v = legendre_fenchel_1d(cgf_abs_power_function(p.value()), y);
  return v.is_infinite() ? v : nonnegative(v.value());
}

}  // namespace lpproj
