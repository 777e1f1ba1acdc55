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

#include "lpproj/rates/cgf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lpproj/numerics/special.hpp"

namespace lpproj {

namespace {

constexpr double kLogCut = 60.0;

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Vector3d = Eigen::Vector3d;

void require_finite_p(double p, double lowest, const char* who) {
  if (!(p >= lowest) || !std::isfinite(p)) {
    throw std::invalid_argument(std::string(who) + ": p out of range");
  }
}

// First L > max(x_star, tiny) with h(L) - h_star < -kLogCut, found by
// doubling. h must be decreasing beyond x_star.
template <class H>
double right_cutoff(H&& h, double x_star, double h_star) {
  double L = std::max(2.0 * x_star, 1e-8);
  for (int i = 0; i < 2100; ++i) {
    if (h(L) - h_star < -kLogCut) return L;
    L *= 2.0;
  }
  throw NonConvergenceError("cgf: could not locate a truncation point", L, 0.0);
}

std::vector<double> breakpoints_with_peak(double x_star, double L) {
  std::vector<double> bp{0.0};
  if (x_star > 0.0 && x_star < L) bp.push_back(x_star);
  bp.push_back(L);
  return bp;
}

}  // namespace

QuadratureConfig cgf_quadrature_config() {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-300;
  cfg.rel_tol = 1e-12;
  cfg.max_subdivisions = 4000;
  return cfg;
}

double log_p_gaussian_normalizer(double p) { return std::log(p) / p + log_gamma(1.0 + 1.0 / p); }

double p_gaussian_density(double p, double x) {
  require_finite_p(p, 1.0, "p_gaussian_density");
  return 0.5 * std::exp(-std::pow(std::fabs(x), p) / p - log_p_gaussian_normalizer(p));
}

double p_gaussian_abs_moment(double p, double r) {
  require_finite_p(p, 1.0, "p_gaussian_abs_moment");
  if (!(r > -1.0)) throw std::invalid_argument("p_gaussian_abs_moment: need r > -1");
  auto h = [p, r](double x) { return (r == 0.0 ? 0.0 : r * std::log(x)) - std::pow(x, p) / p; };
  const double x_star = r > 0.0 ? std::pow(r, 1.0 / p) : 0.0;
  const double h_star = r > 0.0 ? h(x_star) : 0.0;
  const double L = right_cutoff(h, x_star, h_star);
  const auto bp = breakpoints_with_peak(x_star, L);
  auto f = [&](double x) { return x > 0.0 ? std::exp(h(x) - h_star) : (r == 0.0 ? 1.0 : 0.0); };
  const auto res = integrate_panels(f, bp, cgf_quadrature_config());
  return std::exp(h_star + std::log(res.value) - log_p_gaussian_normalizer(p));
}

Cgf2DJet cgf_pair_jet(double p, double t1, double t2) {
  require_finite_p(p, 2.0, "cgf_pair");
  Cgf2DJet jet;
  const bool quadratic = (p == 2.0);
  const double c = 1.0 / p - t2;
  // For p > 2 the integral still converges on t2 = 1/p when t1 < 0.
  if (quadratic ? !(t1 + t2 < 0.5) : !(c > 0.0 || (c == 0.0 && t1 < 0.0))) {
    jet.value = kInfinity;
    return jet;
  }
  auto power = [p, quadratic](double x) { return quadratic ? x * x : std::pow(x, p); };
  auto h = [&](double x) { return t1 * x * x - c * power(x); };

  double x_star = 0.0;
  if (!quadratic && t1 > 0.0) x_star = std::pow(2.0 * t1 / (c * p), 1.0 / (p - 2.0));
  const double h_star = h(x_star);
  const double L = right_cutoff(h, x_star, h_star);
  auto bp = breakpoints_with_peak(x_star, L);
  if (x_star > 0.0) {
    // Bracket a narrow peak at a few widths so the adaptive rule sees it.
    const double sigma = 1.0 / std::sqrt(2.0 * t1 * (p - 2.0));
    for (double s : {4.0, 16.0, 64.0}) {
      if (x_star - s * sigma > 0.0) bp.push_back(x_star - s * sigma);
      if (x_star + s * sigma < L) bp.push_back(x_star + s * sigma);
    }
    std::sort(bp.begin(), bp.end());
  }

  // Moments are taken about the peak to keep the covariance free of
  // cancellation. Deviations are split by sign so each component is positive.
  using Vector8d = Eigen::Matrix<double, 8, 1>;
  const double a0 = x_star * x_star;
  const double b0 = power(x_star);
  auto f = [&](double x) {
    const double da = x * x - a0;
    const double db = power(x) - b0;
    const double w = std::exp(h(x) - h_star);
    const double wa = w * std::fabs(da);
    const double wb = w * std::fabs(db);
    Vector8d v;
    if (x >= x_star) {
      v << w, wa, 0.0, wb, 0.0, w * da * da, w * da * db, w * db * db;
    } else {
      v << w, 0.0, wa, 0.0, wb, w * da * da, w * da * db, w * db * db;
    }
    return v;
  };
  // The exponent is a difference of terms of size |t1| x^2, so the integrand
  // carries that much rounding noise.
  QuadratureConfig cfg = cgf_quadrature_config();
  const double scale = std::fabs(t1) * std::max(a0, 1.0) + std::fabs(c) * std::max(b0, 1.0);
  cfg.rel_tol = std::max(cfg.rel_tol, 64.0 * std::numeric_limits<double>::epsilon() * scale);
  const Vector8d R = integrate_panels(f, bp, cfg).value;
  Vector6d I;
  I << R(0), R(1) - R(2), R(3) - R(4), R(5), R(6), R(7);

  const double d1 = I(1) / I(0);
  const double d2 = I(2) / I(0);
  jet.value = ExtendedReal(h_star + std::log(I(0)) - log_p_gaussian_normalizer(p));
  jet.gradient << a0 + d1, b0 + d2;
  const double c12 = I(4) / I(0) - d1 * d2;
  jet.hessian << I(3) / I(0) - d1 * d1, c12, c12, I(5) / I(0) - d2 * d2;
  return jet;
}

ExtendedReal cgf_pair(const PExponent& p, double t1, double t2) {
  if (p.is_infinite()) throw std::invalid_argument("cgf_pair: p must be finite");
  return cgf_pair_jet(p.value(), t1, t2).value;
}

Cgf2D cgf_pair_function(const PExponent& p) {
  if (p.is_infinite()) throw std::invalid_argument("cgf_pair: p must be finite");
  const double q = p.value();
  require_finite_p(q, 2.0, "cgf_pair");
  Cgf2D cgf;
  cgf.jet = [q](const Eigen::Vector2d& t) { return cgf_pair_jet(q, t(0), t(1)); };
  cgf.evaluate = [q](const Eigen::Vector2d& t) { return cgf_pair_jet(q, t(0), t(1)).value; };
  if (q == 2.0) {
    cgf.domain_test = [](const Eigen::Vector2d& t) { return t(0) + t(1) < 0.5; };
  } else {
    const double bound = 1.0 / q;
    cgf.domain_test = [bound](const Eigen::Vector2d& t) { return t(1) < bound || (t(1) == bound && t(0) < 0.0); };
    cgf.bound = CoordinateBound{1, bound};
  }
  return cgf;
}

Cgf1DJet cgf_infty_jet(double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("cgf_infty: t must be finite");
  const double a = std::fabs(t);
  std::vector<double> bp{0.0};
  if (t > 0.0) {
    // Integrate in u = 1 - x with v = 1 - x^2, so mass piling up at x = 1
    // is resolved exactly and the variance needs no cancellation.
    for (double s : {1.0, 4.0, 16.0, 64.0}) {
      if (s / a < 1.0) bp.push_back(s / a);
    }
    bp.push_back(1.0);
    auto f = [t](double u) {
      const double v = u * (2.0 - u);
      const double w = std::exp(-t * v);
      return Vector3d(w, w * v, w * v * v);
    };
    const Vector3d I = integrate_panels(f, bp, cgf_quadrature_config()).value;
    const double ev = I(1) / I(0);
    return {t + std::log(2.0 * I(0)), 1.0 - ev, I(2) / I(0) - ev * ev};
  }
  if (a > 1.0) {
    for (double s : {1.0, 4.0, 16.0}) {
      if (s / std::sqrt(a) < 1.0) bp.push_back(s / std::sqrt(a));
    }
  }
  bp.push_back(1.0);
  auto f = [t](double x) {
    const double x2 = x * x;
    const double w = std::exp(t * x2);
    return Vector3d(w, w * x2, w * x2 * x2);
  };
  const Vector3d I = integrate_panels(f, bp, cgf_quadrature_config()).value;
  const double d = I(1) / I(0);
  return {std::log(2.0 * I(0)), d, I(2) / I(0) - d * d};
}

double cgf_infty(double t) { return cgf_infty_jet(t).value; }

Cgf1D cgf_infty_centered_function() {
  Cgf1D cgf;
  cgf.evaluate = [](double t) { return ExtendedReal(cgf_infty(t) - std::numbers::ln2); };
  return cgf;
}

ExtendedReal cgf_chi2(double t) {
  if (!(t < 0.5)) return kInfinity;
  return ExtendedReal(-0.5 * std::log1p(-2.0 * t));
}

Cgf1D cgf_chi2_function() {
  Cgf1D cgf;
  cgf.evaluate = [](double t) { return cgf_chi2(t); };
  cgf.domain_upper = 0.5;
  return cgf;
}

ExtendedReal cgf_abs_power(double p, double t) {
  require_finite_p(p, 1.0, "cgf_abs_power");
  if (!(t < 1.0 / p)) return kInfinity;
  return ExtendedReal(-std::log1p(-p * t) / p);
}

ExtendedReal cgf_abs_power_quadrature(double p, double t) {
  require_finite_p(p, 1.0, "cgf_abs_power");
  const double c = 1.0 / p - t;
  if (!(c > 0.0)) return kInfinity;
  auto h = [p, c](double x) { return -c * std::pow(x, p); };
  const double L = right_cutoff(h, 0.0, 0.0);
  const auto res = integrate([&](double x) { return std::exp(h(x)); }, 0.0, L, cgf_quadrature_config());
  return ExtendedReal(std::log(res.value) - log_p_gaussian_normalizer(p));
}

Cgf1D cgf_abs_power_function(double p) {
  require_finite_p(p, 1.0, "cgf_abs_power");
  Cgf1D cgf;
  cgf.evaluate = [p](double t) { return cgf_abs_power(p, t); };
  cgf.domain_upper = 1.0 / p;
  return cgf;
}

MomentReport moment_m_report(const PExponent& p) {
  if (p.is_infinite()) throw std::invalid_argument("moment_m: p must be finite");
  const double q = p.value();
  const double common = std::exp(log_gamma(1.0 + 3.0 / q) - log_gamma(1.0 + 1.0 / q)) / 3.0;
  return {p_gaussian_abs_moment(q, 2.0), std::pow(q, q / 2.0) * common, std::pow(q, 2.0 / q) * common};
}

double moment_m(const PExponent& p) {
  if (p.is_infinite()) throw std::invalid_argument("moment_m: p must be finite");
  return p_gaussian_abs_moment(p.value(), 2.0);
}

}  // namespace lpproj
