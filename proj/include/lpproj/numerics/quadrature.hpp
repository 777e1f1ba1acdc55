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

#ifndef LPPROJ_NUMERICS_QUADRATURE_HPP_
#define LPPROJ_NUMERICS_QUADRATURE_HPP_

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "lpproj/numerics/errors.hpp"

namespace lpproj {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  /// Truncation point, in units of the caller-supplied decay scale.
  double tail_cutoff_multiplier = 40.0;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
      throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
    }
    if (max_subdivisions < 1) {
      throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 1");
    }
    if (!(tail_cutoff_multiplier > 0.0)) {
      throw std::invalid_argument("QuadratureConfig: tail_cutoff_multiplier must be positive");
    }
  }
};

/// `value` and `error` share a type: a double, or an Eigen column vector when
/// several integrals over the same nodes are computed together.
template <class T>
struct QuadratureResult {
  T value;
  T error;
  int subdivisions = 0;
};

namespace quadrature_detail {

template <class T>
struct Traits {
  static double component(const T& v, Eigen::Index) { return v; }
  static Eigen::Index size(const T&) { return 1; }
  static T abs(const T& v) { return std::fabs(v); }
  static T zero(const T&) { return 0.0; }
};

template <class Scalar, int Rows>
struct Traits<Eigen::Matrix<Scalar, Rows, 1>> {
  using V = Eigen::Matrix<Scalar, Rows, 1>;
  static double component(const V& v, Eigen::Index i) { return v(i); }
  static Eigen::Index size(const V& v) { return v.size(); }
  static V abs(const V& v) { return v.cwiseAbs(); }
  static V zero(const V& v) { return V::Zero(v.size()); }
};

// Largest ratio error_i / allowed_i; <= 1 means every component is within tolerance.
template <class T>
double badness(const T& error, const T& reference, const QuadratureConfig& cfg) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < Traits<T>::size(error); ++i) {
    const double allowed =
        std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(Traits<T>::component(reference, i)));
    worst = std::max(worst, Traits<T>::component(error, i) / allowed);
  }
  return worst;
}

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK qk15).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value, error;
};

template <class F>
auto gauss_kronrod_15(F& f, double a, double b) {
  using T = std::decay_t<decltype(f(a))>;
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const T sum = f(center - dx) + f(center + dx);
    kronrod += sum * kWgk[j];
    if (j % 2 == 1) gauss += sum * kWg[j / 2];
  }
  Panel<T> panel{a, b, kronrod * half, Traits<T>::abs((kronrod - gauss) * half)};
  return panel;
}

}  // namespace quadrature_detail

/// Globally adaptive Gauss-Kronrod 7/15 over the panels delimited by
/// `breakpoints` (sorted, at least two). The panel with the worst
/// error-to-tolerance ratio is bisected until the summed estimate meets
/// abs_tol/rel_tol componentwise. Throws NonConvergenceError when
/// max_subdivisions bisections do not suffice.
template <class F>
auto integrate_panels(F&& f, std::span<const double> breakpoints, const QuadratureConfig& cfg) {
  using quadrature_detail::Traits;
  using T = std::decay_t<decltype(f(breakpoints[0]))>;
  cfg.validate();
  if (breakpoints.size() < 2) throw std::invalid_argument("integrate: need at least two breakpoints");

  std::vector<quadrature_detail::Panel<T>> panels;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] > breakpoints[i]) {
      panels.push_back(quadrature_detail::gauss_kronrod_15(f, breakpoints[i], breakpoints[i + 1]));
    }
  }
  if (panels.empty()) {
    const T z = Traits<T>::zero(f(breakpoints[0]));
    return QuadratureResult<T>{z, z, 0};
  }

  auto totals = [&panels] {
    T value = panels.front().value;
    T error = panels.front().error;
    for (std::size_t i = 1; i < panels.size(); ++i) {
      value += panels[i].value;
      error += panels[i].error;
    }
    return std::pair<T, T>(value, error);
  };

  int subdivisions = 0;
  while (true) {
    auto [value, error] = totals();
    if (quadrature_detail::badness(error, value, cfg) <= 1.0) {
      return QuadratureResult<T>{value, error, subdivisions};
    }
    if (subdivisions >= cfg.max_subdivisions) {
      throw NonConvergenceError("integrate: max_subdivisions exhausted",
                                Traits<T>::component(value, 0), Traits<T>::component(error, 0));
    }
    auto worst = std::max_element(panels.begin(), panels.end(), [&](const auto& l, const auto& r) {
      return quadrature_detail::badness(l.error, value, cfg) <
             quadrature_detail::badness(r.error, value, cfg);
    });
    const double a = worst->a;
    const double b = worst->b;
    const double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) {
      throw NonConvergenceError("integrate: panel width reached machine precision",
                                Traits<T>::component(value, 0), Traits<T>::component(error, 0));
    }
    *worst = quadrature_detail::gauss_kronrod_15(f, a, mid);
    panels.push_back(quadrature_detail::gauss_kronrod_15(f, mid, b));
    ++subdivisions;
  }
}

template <class F>
auto integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  const double bp[2] = {a, b};
  return integrate_panels(std::forward<F>(f), std::span<const double>(bp, 2), cfg);
}

template <class F>
auto integrate(F&& f, std::initializer_list<double> breakpoints, const QuadratureConfig& cfg = {}) {
  return integrate_panels(std::forward<F>(f),
                          std::span<const double>(breakpoints.begin(), breakpoints.size()), cfg);
}

namespace quadrature_detail {

// Folds the tail majorant into the error and rechecks the budget.
template <class T>
QuadratureResult<T> with_tail(QuadratureResult<T> r, const T& tail, const QuadratureConfig& cfg) {
  r.error += Traits<T>::abs(tail);
  if (badness(r.error, r.value, cfg) > 1.0) {
    throw NonConvergenceError("integrate: truncation error exceeds tolerance; raise tail_cutoff_multiplier",
                              Traits<T>::component(r.value, 0), Traits<T>::component(r.error, 0));
  }
  return r;
}

}  // namespace quadrature_detail

/// Integral of f over the real line, truncated to
/// [center - L, center + L] with L = tail_cutoff_multiplier * decay_scale.
///
/// The integrand must decay at least like exp(-|x - center| / decay_scale)
/// beyond the cutoff; under that assumption each discarded tail is bounded
/// by |f(cutoff)| * decay_scale, and that majorant is added to the error.
/// The split at `center` keeps a kink there (|x|^p at the origin) off the
/// interior of a panel.
template <class F>
auto integrate_real_line(F&& f, double decay_scale, const QuadratureConfig& cfg = {},
                         double center = 0.0) {
  if (!(decay_scale > 0.0)) throw std::invalid_argument("integrate_real_line: decay_scale must be positive");
  cfg.validate();
  const double cutoff = cfg.tail_cutoff_multiplier * decay_scale;
  auto r = integrate(f, {center - cutoff, center, center + cutoff}, cfg);
  const auto tail = (quadrature_detail::Traits<decltype(r.value)>::abs(f(center - cutoff)) +
                     quadrature_detail::Traits<decltype(r.value)>::abs(f(center + cutoff))) *
                    decay_scale;
  return quadrature_detail::with_tail(r, tail, cfg);
}

/// Integral of f over [a, inf), truncated at a + tail_cutoff_multiplier *
/// decay_scale with the same exponential-tail majorant as
/// integrate_real_line.
template <class F>
auto integrate_half_line(F&& f, double a, double decay_scale, const QuadratureConfig& cfg = {}) {
  if (!(decay_scale > 0.0)) throw std::invalid_argument("integrate_half_line: decay_scale must be positive");
  cfg.validate();
  const double cutoff = a + cfg.tail_cutoff_multiplier * decay_scale;
  auto r = integrate(f, a, cutoff, cfg);
  const auto tail = quadrature_detail::Traits<decltype(r.value)>::abs(f(cutoff)) * decay_scale;
  return quadrature_detail::with_tail(r, tail, cfg);
}

}  // namespace lpproj

#endif  // LPPROJ_NUMERICS_QUADRATURE_HPP_
