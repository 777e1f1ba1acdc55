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

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "doctest.h"
#include "lpproj/numerics/conjugate.hpp"
#include "lpproj/numerics/errors.hpp"
#include "lpproj/numerics/minimize.hpp"
#include "lpproj/numerics/quadrature.hpp"
#include "lpproj/numerics/special.hpp"

using namespace lpproj;

namespace {

double rel_err(double got, double want) { return std::fabs(got - want) / std::max(1e-300, std::fabs(want)); }

// Brute-force sup over a fine grid, the independent conjugate oracle.
double grid_sup_1d(const Cgf1D& cgf, double x, double lo, double hi, int points = 200001) {
  double best = -INFINITY;
  for (int i = 0; i < points; ++i) {
    const double t = lo + (hi - lo) * i / (points - 1);
    if (!(t > cgf.domain_lower && t < cgf.domain_upper)) continue;
    const ExtendedReal v = cgf.evaluate(t);
    if (v.is_finite()) best = std::max(best, t * x - v.value());
  }
  return best;
}

Cgf1D gaussian_cgf() { return {[](double t) { return ExtendedReal(0.5 * t * t); }}; }

Cgf1D exponential_cgf() {
  Cgf1D c;
  c.evaluate = [](double t) { return t < 1.0 ? ExtendedReal(-std::log1p(-t)) : kInfinity; };
  c.domain_upper = 1.0;
  return c;
}

Cgf2D quadratic_cgf(const Eigen::Matrix2d& a) {
  Cgf2D c;
  c.jet = [a](const Eigen::Vector2d& t) {
    Cgf2DJet j;
    j.value = 0.5 * t.dot(a * t);
    j.gradient = a * t;
    j.hessian = a;
    return j;
  };
  c.evaluate = [a](const Eigen::Vector2d& t) { return ExtendedReal(0.5 * t.dot(a * t)); };
  c.domain_test = [](const Eigen::Vector2d&) { return true; };
  return c;
}

}  // namespace

TEST_CASE("log_gamma and log_beta against boost") {
  for (double x : {1e-8, 0.1, 0.5, 1.0, 1.5, 2.0, 7.25, 33.3, 1e3, 1e6}) {
    CHECK(std::fabs(log_gamma(x) - boost::math::lgamma(x)) <= 1e-12 * std::max(1.0, std::fabs(boost::math::lgamma(x))));
  }
  for (double a : {0.5, 1.0, 3.5, 40.0}) {
    for (double b : {0.5, 2.0, 500.0}) {
      CHECK(rel_err(std::exp(log_beta(a, b)), boost::math::beta(a, b)) < 1e-11);
    }
  }
}

TEST_CASE("regularized incomplete beta against boost") {
  for (double a : {0.5, 1.0, 2.5, 12.5, 250.0, 4999.5}) {
    for (double b : {0.5, 1.0, 4.0, 24.5, 5000.0}) {
      for (double x : {1e-6, 0.01, 0.2, 0.5, 0.64, 0.9, 0.999}) {
        const double want = boost::math::ibeta(a, b, x);
        const double want_c = boost::math::ibetac(a, b, x);
        const double got = regularized_incomplete_beta(x, a, b);
        const double got_c = regularized_incomplete_beta_complement(x, a, b);
        if (want > 1e-290) CHECK(rel_err(got, want) < 1e-10);
        if (want_c > 1e-290) CHECK(rel_err(got_c, want_c) < 1e-10);
      }
    }
  }
  CHECK(regularized_incomplete_beta(0.0, 2.0, 3.0) == 0.0);
  CHECK(regularized_incomplete_beta(1.0, 2.0, 3.0) == 1.0);
}

TEST_CASE("quadrature on closed forms") {
  const auto gauss = integrate_real_line([](double x) { return std::exp(-x * x); }, 1.0);
  CHECK(rel_err(gauss.value, std::sqrt(std::numbers::pi)) < 1e-12);

  const auto gamma4 = integrate_half_line([](double x) { return x * x * x * std::exp(-x); }, 0.0, 2.0);
  CHECK(rel_err(gamma4.value, 6.0) < 1e-10);

  const auto vec = integrate(
      [](double x) {
        Eigen::Vector3d v(1.0, x, x * x);
        return v;
      },
      0.0, 3.0);
  CHECK(rel_err(vec.value(0), 3.0) < 1e-13);
  CHECK(rel_err(vec.value(1), 4.5) < 1e-13);
  CHECK(rel_err(vec.value(2), 9.0) < 1e-13);

  const auto kinked = integrate([](double x) { return std::fabs(x - 0.3); }, {0.0, 0.3, 1.0});
  CHECK(rel_err(kinked.value, 0.5 * (0.09 + 0.49)) < 1e-13);
}

TEST_CASE("quadrature reports non-convergence") {
  QuadratureConfig cfg;
  cfg.max_subdivisions = 1;
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / x); }, 1e-3, 1.0, cfg), NonConvergenceError);
  cfg.abs_tol = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("minimize_scalar") {
  const auto r = minimize_scalar([](double x) { return (x - 0.3) * (x - 0.3) + 1.0; }, 0.0, 1.0, 1e-10);
  CHECK(std::fabs(r.argmin - 0.3) < 1e-6);
  CHECK(std::fabs(r.min.value() - 1.0) < 1e-12);

  const auto edge = minimize_scalar([](double x) { return x; }, 2.0, 5.0, 1e-10);
  CHECK(edge.argmin == 2.0);

  const auto none = minimize_scalar([](double) { return kInfinity; }, 0.0, 1.0, 1e-10);
  CHECK(none.min.is_infinite());

  CHECK_THROWS_AS(minimize_scalar([](double x) { return x; }, 1.0, 1.0, 1e-10), std::invalid_argument);
}

TEST_CASE("1-D conjugate against closed forms and a grid oracle") {
  for (double x : {-3.0, -0.5, 0.0, 0.7, 2.5}) {
    CHECK(std::fabs(legendre_fenchel_1d(gaussian_cgf(), x).value() - 0.5 * x * x) < 1e-9);
  }
  const Cgf1D expo = exponential_cgf();
  for (double x : {0.05, 0.5, 1.0, 3.0, 20.0}) {
    const double want = x - 1.0 - std::log(x);
    CHECK(std::fabs(legendre_fenchel_1d(expo, x).value() - want) < 1e-8 * std::max(1.0, want));
    CHECK(legendre_fenchel_1d(expo, x).value() >= grid_sup_1d(expo, x, -50.0, 0.999999) - 1e-9);
  }
  CHECK(legendre_fenchel_1d(expo, 0.0).is_infinite());
  CHECK(legendre_fenchel_1d(expo, -1.0).is_infinite());
}

TEST_CASE("2-D conjugate of a quadratic form") {
  Eigen::Matrix2d a;
  a << 2.0, 0.5, 0.5, 1.0;
  const Cgf2D cgf = quadratic_cgf(a);
  for (const auto& x : {Eigen::Vector2d(1.0, -2.0), Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(30.0, 4.0)}) {
    const double want = 0.5 * x.dot(a.inverse() * x);
    const auto r = legendre_fenchel_2d_point(cgf, x);
    CHECK(std::fabs(r.value.value() - want) < 1e-9 * std::max(1.0, want));
    CHECK((r.argmax - a.inverse() * x).norm() < 1e-6 * std::max(1.0, x.norm()));
  }
}

TEST_CASE("2-D conjugate with a coordinate bound") {
  Cgf2D cgf = quadratic_cgf(Eigen::Matrix2d::Identity());
  cgf.domain_test = [](const Eigen::Vector2d& t) { return t(1) <= 0.5; };
  cgf.bound = CoordinateBound{1, 0.5};
  // sup over t1 gives 1/2; sup over t2 <= 1/2 of 2 t2 - t2^2/2 sits on the bound.
  const auto r = legendre_fenchel_2d_point(cgf, Eigen::Vector2d(1.0, 2.0));
  CHECK(std::fabs(r.value.value() - (0.5 + 1.0 - 0.125)) < 1e-9);
  CHECK(r.on_boundary);
  const auto inside = legendre_fenchel_2d_point(cgf, Eigen::Vector2d(1.0, 0.25));
  CHECK(std::fabs(inside.value.value() - (0.5 + 0.03125)) < 1e-9);
}

TEST_CASE("2-D conjugate diverges to infinity off the mean range") {
  // Lambda(t) = -log(1 - t1) - log(1 - t2): the conjugate is infinite for x1 <= 0.
  Cgf2D cgf;
  cgf.domain_test = [](const Eigen::Vector2d& t) { return t(0) < 1.0 && t(1) < 1.0; };
  cgf.evaluate = [](const Eigen::Vector2d& t) {
    return t(0) < 1.0 && t(1) < 1.0 ? ExtendedReal(-std::log1p(-t(0)) - std::log1p(-t(1))) : kInfinity;
  };
  CHECK(legendre_fenchel_2d(cgf, Eigen::Vector2d(-0.5, 1.0)).is_infinite());
  const double want = 2.0 - 1.0 - std::log(2.0) + 0.5 - 1.0 - std::log(0.5);
  CHECK(std::fabs(legendre_fenchel_2d(cgf, Eigen::Vector2d(2.0, 0.5)).value() - want) < 1e-7);
}
