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

#include "lpproj/numerics/conjugate.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "lpproj/numerics/errors.hpp"

namespace lpproj {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double start_point(const Cgf1D& cgf) {
  const double lo = cgf.domain_lower;
  const double hi = cgf.domain_upper;
  if (lo < 0.0 && 0.0 < hi) return 0.0;
  if (std::isfinite(lo) && std::isfinite(hi)) return 0.5 * (lo + hi);
  if (std::isfinite(lo)) return lo + std::max(1.0, std::fabs(lo));
  return hi - std::max(1.0, std::fabs(hi));
}

Cgf2DJet finite_difference_jet(const Cgf2D& cgf, const Eigen::Vector2d& t) {
  Cgf2DJet jet;
  jet.value = cgf.evaluate(t);
  if (jet.value.is_infinite()) return jet;
  const double f0 = jet.value.value();
  Eigen::Vector2d h;
  for (int i = 0; i < 2; ++i) h(i) = 1e-4 * std::max(1.0, std::fabs(t(i)));
  auto f = [&](const Eigen::Vector2d& u) { return cgf.evaluate(u).to_double(); };
  for (int i = 0; i < 2; ++i) {
    Eigen::Vector2d e = Eigen::Vector2d::Zero();
    e(i) = h(i);
    const double fp = f(t + e);
    const double fm = f(t - e);
    jet.gradient(i) = (fp - fm) / (2 * h(i));
    jet.hessian(i, i) = (fp - 2 * f0 + fm) / (h(i) * h(i));
  }
  Eigen::Vector2d e0(h(0), 0.0), e1(0.0, h(1));
  jet.hessian(0, 1) = jet.hessian(1, 0) =
      (f(t + e0 + e1) - f(t + e0 - e1) - f(t - e0 + e1) + f(t - e0 - e1)) / (4 * h(0) * h(1));
  return jet;
}

}  // namespace

ConjugateResult1D legendre_fenchel_1d_point(const Cgf1D& cgf, double x, const ConjugateOptions& opts) {
  if (!cgf.evaluate) throw std::invalid_argument("legendre_fenchel_1d: empty cgf");
  auto objective = [&](double t) {
    if (!(t > cgf.domain_lower && t < cgf.domain_upper)) return kNegInf;
    const ExtendedReal v = cgf.evaluate(t);
    return v.is_infinite() ? kNegInf : t * x - v.value();
  };

  const double s = start_point(cgf);
  const double fs = objective(s);
  if (fs == kNegInf) throw std::invalid_argument("legendre_fenchel_1d: start point outside the effective domain");

  double best_t = s;
  double best_f = fs;
  auto track = [&](double t, double f) {
    if (f > best_f) {
      best_t = t;
      best_f = f;
    }
  };

  // Moves from t by `step` in direction `dir`, halving the distance to a
  // finite domain bound instead of crossing it.
  auto advance = [&](double t, double step, int dir) {
    double cand = t + dir * step;
    if (dir > 0 && cand >= cgf.domain_upper) cand = t + 0.5 * (cgf.domain_upper - t);
    if (dir < 0 && cand <= cgf.domain_lower) cand = t - 0.5 * (t - cgf.domain_lower);
    return cand;
  };

  double step = 1e-3 * std::max(1.0, std::fabs(s));
  const double tp = advance(s, step, +1);
  const double tm = advance(s, step, -1);
  const double fp = objective(tp);
  const double fm = objective(tm);
  track(tp, fp);
  track(tm, fm);

  double lo, hi;
  if (fp <= fs && fm <= fs) {
    lo = tm;
    hi = tp;
  } else {
    const int dir = fp > fm ? +1 : -1;
    double t0 = s;
    double t1 = dir > 0 ? tp : tm;
    double f1 = dir > 0 ? fp : fm;
    for (int iter = 0;; ++iter) {
      if (f1 > opts.divergence_threshold || std::fabs(t1) > opts.argument_limit) {
        return {kInfinity, t1};
      }
      if (iter > 4000) throw NonConvergenceError("legendre_fenchel_1d: bracket search", f1, 0.0);
      step *= 2.0;
      const double t2 = advance(t1, step, dir);
      if (t2 == t1) return {ExtendedReal(f1), t1};  // supremum at a finite domain bound
      const double f2 = objective(t2);
      track(t2, f2);
      if (f2 <= f1) {
        lo = std::min(t0, t2);
        hi = std::max(t0, t2);
        break;
      }
      t0 = t1;
      t1 = t2;
      f1 = f2;
    }
  }

  constexpr double kInvPhi = 0.6180339887498948482;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = objective(c);
  double fd = objective(d);
  track(c, fc);
  track(d, fd);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (hi - lo <= opts.argument_tolerance * std::max(1.0, std::fabs(best_t))) break;
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = objective(c);
      track(c, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = objective(d);
      track(d, fd);
    }
  }
  return {ExtendedReal(best_f), best_t};
}

ExtendedReal legendre_fenchel_1d(const Cgf1D& cgf, double x, const ConjugateOptions& opts) {
  return legendre_fenchel_1d_point(cgf, x, opts).value;
}

ConjugateResult2D legendre_fenchel_2d_point(const Cgf2D& cgf, const Eigen::Vector2d& x,
                                            const ConjugateOptions& opts,
                                            const std::optional<Eigen::Vector2d>& start) {
  if (!cgf.evaluate || !cgf.domain_test) throw std::invalid_argument("legendre_fenchel_2d: incomplete cgf");
  auto jet_at = [&](const Eigen::Vector2d& t) { return cgf.jet ? cgf.jet(t) : finite_difference_jet(cgf, t); };

  Eigen::Vector2d t = start.value_or(Eigen::Vector2d::Zero());
  if (!cgf.domain_test(t)) throw std::invalid_argument("legendre_fenchel_2d: start point outside the domain");
  Cgf2DJet jet = jet_at(t);
  if (jet.value.is_infinite()) throw std::invalid_argument("legendre_fenchel_2d: cgf infinite at start point");
  double phi = t.dot(x) - jet.value.value();

  const int bi = cgf.bound ? cgf.bound->index : 0;
  const double upper = cgf.bound ? cgf.bound->upper : 0.0;
  auto on_bound = [&](const Eigen::Vector2d& u) { return cgf.bound && u(bi) >= upper; };

  ConjugateResult2D result;
  auto finish = [&](ExtendedReal value, const Eigen::Vector2d& at, bool boundary) {
    result.value = value;
    result.argmax = at;
    result.on_boundary = boundary;
    return result;
  };

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    result.iterations = iter;
    const Eigen::Vector2d g = x - jet.gradient;
    const double trace = jet.hessian.trace();
    const double ridge = trace > 0.0 ? 1e-10 * trace : 1e-10;
    const bool pinned = on_bound(t) && g(bi) > 0.0;

    Eigen::Vector2d d = Eigen::Vector2d::Zero();
    if (pinned) {
      // Newton in the free coordinate only.
      const int fj = 1 - bi;
      if (std::fabs(g(fj)) <= opts.gradient_tolerance) return finish(ExtendedReal(phi), t, true);
      const double h = jet.hessian(fj, fj) + ridge;
      d(fj) = (std::isfinite(h) && h > 0.0) ? g(fj) / h : g(fj);
    } else {
      if (g.norm() <= opts.gradient_tolerance) return finish(ExtendedReal(phi), t, false);
      d = (jet.hessian + ridge * Eigen::Matrix2d::Identity()).ldlt().solve(g);
      if (!d.allFinite() || d.dot(g) <= 0.0) d = g;
    }
    // Half the Newton decrement estimates the remaining gain.
    if (d.dot(g) <= 1e-15 * std::max(1.0, std::fabs(phi))) return finish(ExtendedReal(phi), t, pinned);

    bool accepted = false;
    Eigen::Vector2d t_new;
    Cgf2DJet jet_new;
    double phi_new = kNegInf;
    double alpha = 1.0;
    bool eval_failed = false;
    for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
      t_new = t + alpha * d;
      if (cgf.bound && t_new(bi) > upper) t_new(bi) = upper;
      if (!cgf.domain_test(t_new)) continue;
      try {
        jet_new = jet_at(t_new);
      } catch (const NonConvergenceError&) {
        eval_failed = true;
        continue;
      }
      if (jet_new.value.is_infinite()) continue;
      phi_new = t_new.dot(x) - jet_new.value.value();
      if (phi_new > opts.divergence_threshold) return finish(kInfinity, t_new, false);
      if (phi_new >= phi + 1e-4 * (t_new - t).dot(g)) {
        accepted = true;
        break;
      }
    }
    if (!accepted && eval_failed) {
      throw NonConvergenceError("legendre_fenchel_2d: cgf evaluation failed along the ascent path", phi,
                                (x - jet.gradient).norm());
    }
    // No ascent left at working precision.
    if (!accepted) return finish(ExtendedReal(phi), t, on_bound(t));
    // A full step that leaves the gradient unchanged means the cgf is affine
    // along d; keep doubling so an unbounded ascent is recognised quickly.
    if (alpha == 1.0 && (x - jet_new.gradient - g).norm() <= 1e-3 * g.norm()) {
      for (double scale = 2.0; scale < 1e300; scale *= 2.0) {
        Eigen::Vector2d t_try = t + scale * d;
        if (cgf.bound && t_try(bi) > upper) t_try(bi) = upper;
        if (!cgf.domain_test(t_try)) break;
        Cgf2DJet jet_try;
        try {
          jet_try = jet_at(t_try);
        } catch (const NonConvergenceError&) {
          break;
        }
        if (jet_try.value.is_infinite()) break;
        const double phi_try = t_try.dot(x) - jet_try.value.value();
        if (!(phi_try > phi_new)) break;
        if (phi_try > opts.divergence_threshold) return finish(kInfinity, t_try, false);
        t_new = t_try;
        jet_new = jet_try;
        phi_new = phi_try;
      }
    }
    if (t_new.norm() > opts.argument_limit) return finish(kInfinity, t_new, false);
    t = t_new;
    jet = jet_new;
    phi = phi_new;
  }
  throw NonConvergenceError("legendre_fenchel_2d: iteration budget exhausted", phi, (x - jet.gradient).norm());
}

ExtendedReal legendre_fenchel_2d(const Cgf2D& cgf, const Eigen::Vector2d& x, const ConjugateOptions& opts) {
  return legendre_fenchel_2d_point(cgf, x, opts).value;
}

}  // namespace lpproj
