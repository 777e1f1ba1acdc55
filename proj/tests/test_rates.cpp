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

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "doctest.h"
#include "lpproj/numerics/conjugate.hpp"
#include "lpproj/numerics/errors.hpp"
#include "lpproj/rates/bounds.hpp"
#include "lpproj/rates/cgf.hpp"
#include "lpproj/rates/rates.hpp"

using namespace lpproj;

namespace {

double closed_m(double p) { return std::pow(p, 2.0 / p) * std::tgamma(3.0 / p) / std::tgamma(1.0 / p); }

// log E exp(t1 Z^2 + t2 |Z|^p) by boost's exp-sinh rule.
double pair_oracle(double p, double t1, double t2) {
  const double norm = 2.0 * std::pow(p, 1.0 / p) * std::tgamma(1.0 + 1.0 / p);
  boost::math::quadrature::exp_sinh<double> rule;
  const double v = rule.integrate(
      [=](double x) {
        if (x > 1e50) return 0.0;
        return 2.0 * std::exp(t1 * x * x + t2 * std::pow(x, p) - std::pow(x, p) / p) / norm;
      });
  return std::log(v);
}

double infty_oracle(double t) {
  if (t < 0.0) {
    const double s = std::sqrt(-t);
    return std::log(2.0 * 0.5 * std::sqrt(std::numbers::pi) * boost::math::erf(s) / s);
  }
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [t](double x) { return std::exp(t * x * x); }, 0.0, 1.0, 15, 1e-14);
  return std::log(2.0 * v);
}

double closed_V(double lambda, double y) {
  return lambda / 2.0 * std::log(lambda / (y * y)) + (1.0 - lambda) / 2.0 * std::log((1.0 - lambda) / (1.0 - y * y));
}

}  // namespace

TEST_CASE("rate_U") {
  CHECK(rate_U(1.0).value() == 0.0);
  CHECK(rate_U(std::exp(-1.0)).value() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rate_U(1.5).is_infinite());
  CHECK(rate_U(0.0).is_infinite());
  CHECK(rate_U(-0.2).is_infinite());
}

TEST_CASE("rate_V branches") {
  CHECK(rate_V(0.5, std::sqrt(0.5)).value() < 1e-15);
  CHECK(rate_V(0.0, 0.6).value() == doctest::Approx(-0.5 * std::log(0.64)).epsilon(1e-14));
  CHECK(rate_V(1.0, 0.5).value() == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(rate_V(0.3, 0.4).value() == doctest::Approx(closed_V(0.3, 0.4)).epsilon(1e-14));
  CHECK(rate_V(0.5, 1.0).is_infinite());
  CHECK(rate_V(0.5, 0.0).is_infinite());
  CHECK(rate_V(0.0, 0.0).value() == 0.0);
  CHECK(rate_V(0.0, 1.0).is_infinite());
  CHECK(rate_V(1.0, 1.0).value() == 0.0);
  CHECK(rate_V(1.0, 0.0).is_infinite());
  CHECK(rate_V(0.5, 1.2).is_infinite());
  CHECK(rate_V(0.5, -0.3).is_infinite());
  CHECK_THROWS_AS(rate_V(1.5, 0.5), std::invalid_argument);
}

TEST_CASE("rate_V is continuous in lambda at the endpoints") {
  for (double y = 0.05; y < 0.96; y += 0.05) {
    CHECK(std::fabs(rate_V(1e-6, y).value() - rate_V(0.0, y).value()) < 1e-4);
    CHECK(std::fabs(rate_V(1.0 - 1e-6, y).value() - rate_V(1.0, y).value()) < 1e-4);
  }
}

TEST_CASE("rate_V1 matches rate_V through the factorization infimum") {
  for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (double y = 0.02; y <= 1.0; y += 0.07) {
      const ExtendedReal a = rate_V1(lambda, y);
      const ExtendedReal b = rate_V(lambda, y);
      REQUIRE(a.is_finite() == b.is_finite());
      if (b.is_finite()) CHECK(std::fabs(a.value() - b.value()) < 1e-8);
    }
  }
  CHECK(rate_V1(0.0, 0.6).value() == doctest::Approx(0.223144).epsilon(1e-6));
  CHECK(rate_V1(1.0, 1.0).value() == 0.0);
  CHECK(rate_V1(0.5, 1.0).is_infinite());
  CHECK(rate_V1(0.5, 1.01).is_infinite());
}

TEST_CASE("moment m_p from quadrature") {
  for (double p : {1.0, 1.2, 1.5, 2.0, 3.0, 4.0, 7.5}) {
    const MomentReport r = moment_m_report(PExponent(p));
    CHECK(std::fabs(r.m - closed_m(p)) < 1e-10 * closed_m(p));
    CHECK(std::fabs(r.candidate_p2p - r.m) < 1e-10);
    const bool half_p_agrees = std::fabs(r.candidate_pp2 - r.m) < 1e-8;
    CHECK(half_p_agrees == (p == 1.0 || p == 2.0));
  }
  CHECK(moment_m(PExponent(2.0)) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(moment_m(PExponent(1.0)) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("cgf_pair against an independent quadrature") {
  for (double p : {2.0, 3.0, 4.0}) {
    for (auto [t1, t2] : {std::pair{0.0, 0.0}, {0.1, -0.2}, {-1.0, 0.2}, {0.2, -3.0}, {-5.0, -5.0}}) {
      if (p == 2.0 && t1 + t2 >= 0.5) continue;
      const ExtendedReal v = cgf_pair(PExponent(p), t1, t2);
      CAPTURE(p);
      CAPTURE(t1);
      CAPTURE(t2);
      REQUIRE(v.is_finite());
      CHECK(std::fabs(v.value() - pair_oracle(p, t1, t2)) < 1e-9 * std::max(1.0, std::fabs(v.value())));
    }
  }
  CHECK(cgf_pair(PExponent(2.0), 0.3, 0.2).is_infinite());
  CHECK(cgf_pair(PExponent(3.0), 0.1, 0.4).is_infinite());
  CHECK(cgf_pair(PExponent(3.0), 0.1, 1.0 / 3.0).is_infinite());
  // On the face t2 = 1/p the tilted density is Gaussian-like when t1 < 0.
  CHECK(cgf_pair(PExponent(3.0), -0.5, 1.0 / 3.0).is_finite());
}

TEST_CASE("cgf_pair jet matches finite differences") {
  const double h = 1e-5;
  for (double p : {2.0, 3.0, 4.0}) {
    for (auto [t1, t2] : {std::pair{0.05, -0.1}, {-0.7, 0.1}, {0.3, -2.0}}) {
      const Cgf2DJet j = cgf_pair_jet(p, t1, t2);
      auto f = [&](double a, double b) { return cgf_pair(PExponent(p), a, b).value(); };
      const double g1 = (f(t1 + h, t2) - f(t1 - h, t2)) / (2 * h);
      const double g2 = (f(t1, t2 + h) - f(t1, t2 - h)) / (2 * h);
      CHECK(std::fabs(j.gradient(0) - g1) < std::max(1e-6, 1e-4 * std::fabs(g1)));
      CHECK(std::fabs(j.gradient(1) - g2) < std::max(1e-6, 1e-4 * std::fabs(g2)));
      const double h11 = (f(t1 + h, t2) - 2 * f(t1, t2) + f(t1 - h, t2)) / (h * h);
      CHECK(std::fabs(j.hessian(0, 0) - h11) < std::max(1e-4, 1e-3 * std::fabs(h11)));
      CHECK(j.hessian(0, 1) == doctest::Approx(j.hessian(1, 0)));
    }
  }
}

TEST_CASE("cgf_infty against erf and quadrature") {
  for (double t : {-400.0, -30.0, -2.0, -0.1, 0.0, 0.3, 1.0, 5.0, 60.0}) {
    CHECK(std::fabs(cgf_infty(t) - infty_oracle(t)) < 1e-10 * std::max(1.0, std::fabs(cgf_infty(t))));
  }
  CHECK(cgf_infty(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(cgf_infty(1.0) == doctest::Approx(1.073398233).epsilon(1e-9));
  const Cgf1DJet j = cgf_infty_jet(0.0);
  CHECK(j.derivative == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(j.second_derivative == doctest::Approx(1.0 / 5.0 - 1.0 / 9.0).epsilon(1e-10));
}

TEST_CASE("closed-form cgfs") {
  CHECK(cgf_chi2(0.0).value() == 0.0);
  CHECK(cgf_chi2(0.25).value() == doctest::Approx(-0.5 * std::log(0.5)));
  CHECK(cgf_chi2(0.5).is_infinite());
  for (double p : {1.0, 1.5, 3.0}) {
    for (double t : {-2.0, -0.1, 0.1, 0.9 / p}) {
      CHECK(std::fabs(cgf_abs_power(p, t).value() - cgf_abs_power_quadrature(p, t).value()) < 1e-9);
    }
    CHECK(cgf_abs_power(p, 1.0 / p).is_infinite());
  }
}

TEST_CASE("conjugate rates of empirical means") {
  for (double y : {0.2, 0.9, 1.0, 2.0, 6.0}) {
    CHECK(rate_G_mean(y).value() == doctest::Approx(0.5 * (y - 1.0 - std::log(y))).epsilon(1e-14));
    CHECK(std::fabs(legendre_fenchel_1d(cgf_chi2_function(), y).value() - rate_G_mean(y).value()) < 1e-8);
    for (double p : {1.0, 1.5, 3.0}) {
      CHECK(std::fabs(rate_Zp_mean(PExponent(p), y).value() - (y - 1.0 - std::log(y)) / p) < 1e-8);
    }
  }
  CHECK(rate_Zp_mean(PExponent(1.0), 2.0).value() == doctest::Approx(0.30685281944).epsilon(1e-9));
  CHECK(rate_G_mean(0.0).is_infinite());
  CHECK(rate_Zp_mean(PExponent(3.0), -1.0).is_infinite());
}

TEST_CASE("rate_Z2_sum") {
  const double m = moment_m(PExponent(1.5));
  CHECK(rate_Z2_sum(PExponent(1.5), m).value() == 0.0);
  CHECK(rate_Z2_sum(PExponent(1.5), m + 4.0).value() == doctest::Approx(std::pow(4.0, 0.75) / 1.5));
  CHECK(rate_Z2_sum(PExponent(1.5), 0.5 * m).is_infinite());
  CHECK_THROWS_AS(rate_Z2_sum(PExponent(2.0), 1.0), std::invalid_argument);
}

TEST_CASE("rate_W") {
  CHECK(rate_W(PExponent(2.0), 1.0).value() == 0.0);
  CHECK(rate_W(PExponent(2.0), 0.99).is_infinite());
  for (double p : {3.0, 4.0}) {
    CHECK(rate_W(PExponent(p), std::sqrt(closed_m(p))).value() < 1e-6);
    CHECK(rate_W(PExponent(p), 1.0).is_infinite());
    CHECK(rate_W(PExponent(p), 0.0).is_infinite());
    // Decreasing towards the typical value from below, increasing above it.
    const double typical = std::sqrt(closed_m(p));
    double prev = rate_W(PExponent(p), 0.3).value();
    for (double y = 0.35; y < typical - 0.02; y += 0.05) {
      const double v = rate_W(PExponent(p), y).value();
      CHECK(v < prev);
      prev = v;
    }
    prev = 0.0;
    for (double y = typical + 0.02; y < 0.99; y += 0.03) {
      const double v = rate_W(PExponent(p), y).value();
      CHECK(v > prev);
      prev = v;
    }
  }
  CHECK(rate_W(PExponent::infinity(), std::sqrt(1.0 / 3.0)).value() < 1e-6);
  CHECK(rate_W(PExponent::infinity(), 1.0).is_infinite());
  CHECK(rate_W(PExponent::infinity(), 0.8).value() > rate_W(PExponent::infinity(), 0.7).value());
}

TEST_CASE("rate_W near the upper edge grows like half a log") {
  for (double p : {3.0, 4.0, 10.0}) {
    double prev = rate_W(PExponent(p), 0.999).value();
    for (double gap : {1e-4, 1e-5}) {
      const double v = rate_W(PExponent(p), 1.0 - gap).value();
      CHECK(v - prev == doctest::Approx(0.5 * std::log(10.0)).epsilon(0.01));
      prev = v;
    }
  }
}

TEST_CASE("rate_projection small-p closed form") {
  const double m = closed_m(1.0);
  CHECK(rate_projection(PExponent(1.0), 0.5, 1.1).value() == doctest::Approx(std::sqrt(1.21 / 0.5 - m)));
  CHECK(rate_projection(PExponent(1.0), 0.5, 1.1).value() == doctest::Approx(0.6481).epsilon(1e-4));
  CHECK(rate_projection(PExponent(1.5), 0.3, std::sqrt(0.3 * moment_m(PExponent(1.5)))).value() == 0.0);
  CHECK(rate_projection(PExponent(1.5), 0.3, 0.1).is_infinite());
  CHECK_THROWS_AS(rate_projection(PExponent(1.5), 0.0, 1.0), UnsupportedRegimeError);
  double prev = 0.0;
  for (double y = std::sqrt(0.5 * closed_m(1.5)) + 0.01; y < 4.0; y += 0.1) {
    const double v = rate_projection(PExponent(1.5), 0.5, y).value();
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("rate_projection at p = 2 equals the Gaussian-factor rate") {
  for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (double y = 0.05; y < 1.0; y += 0.1) {
      const ExtendedReal a = rate_projection(PExponent(2.0), lambda, y);
      const ExtendedReal b = rate_V(lambda, y);
      REQUIRE(a.is_finite() == b.is_finite());
      if (b.is_finite()) CHECK(std::fabs(a.value() - b.value()) < 1e-6);
    }
  }
}

TEST_CASE("rate_projection for p > 2") {
  for (double p : {3.0, 4.0}) {
    const double typical = std::sqrt(0.5 * closed_m(p));
    CHECK(rate_projection(PExponent(p), 0.5, typical).value() < 1e-6);
    CHECK(rate_projection(PExponent(p), 0.5, typical + 0.1).value() > 1e-4);
    CHECK(rate_projection(PExponent(p), 0.5, 1.0).is_infinite());
    CHECK(rate_projection(PExponent(p), 0.5, -0.1).is_infinite());
  }
  // The contraction never exceeds either of its candidate splits.
  const double y = 0.3;
  for (double x : {0.5, 0.7, 0.9}) {
    const ExtendedReal split = rate_V1(0.5, y / x) + rate_W(PExponent(3.0), x);
    CHECK(rate_projection(PExponent(3.0), 0.5, y) <= split);
  }
  CHECK(std::fabs(rate_projection(PExponent(3.0), 0.5, y).value() -
                  rate_projection_display(PExponent(3.0), 0.5, y, DisplayVariant::kScaledRatio).value()) < 1e-6);
}

TEST_CASE("evaluate dispatches and validates") {
  RateQuery q;
  q.name = RateName::kRateW;
  q.y = 1.0;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  q.p = PExponent(2.0);
  CHECK(evaluate(q).value() == 0.0);
  q.lambda = 0.5;
  CHECK_THROWS_AS(evaluate(q), std::invalid_argument);
  CHECK(parse_rate_name("rate_projection") == RateName::kRateProjection);
  CHECK(to_string(RateName::kRateZpMean) == "rate_Zp_mean");
  CHECK_THROWS_AS(parse_rate_name("rate_X"), std::invalid_argument);
}

TEST_CASE("speeds") {
  const Speed s = speed_for(RateName::kRateProjection, PExponent(1.0));
  CHECK(s.kind == SpeedKind::kNPowPHalf);
  CHECK(s.value(100, 50) == doctest::Approx(10.0));
  CHECK(speed_for(RateName::kRateProjection, PExponent(3.0)).kind == SpeedKind::kN);
  CHECK(speed_for(RateName::kRateV, std::nullopt).value(70, 3) == 70.0);
}

TEST_CASE("rate curves serialize and validate") {
  const RateCurve c = evaluate_curve(RateName::kRateW, PExponent(2.0), std::nullopt, linear_grid(0.5, 1.5, 11), 2);
  const std::string csv = rate_curve_csv(c);
  CHECK(csv.rfind("y,value\n0.5,inf\n", 0) == 0);
  CHECK(csv.find("\n1,0\n") != std::string::npos);
  CHECK(validate_rate_curve_csv(csv) == 11);
  validate_rate_curve_metadata_json(rate_curve_metadata_json(c));
  CHECK_THROWS(validate_rate_curve_csv("y,value\n0.5,-inf\n"));
  CHECK_THROWS(evaluate_curve(RateName::kRateU, std::nullopt, std::nullopt, {0.5, 0.4}));

  const auto g = linear_grid(0.01, 0.99, 99);
  const RateCurve one = evaluate_curve(RateName::kRateProjection, PExponent(2.0), 0.5, g, 1);
  const RateCurve four = evaluate_curve(RateName::kRateProjection, PExponent(2.0), 0.5, g, 4);
  CHECK(rate_curve_csv(one) == rate_curve_csv(four));
}

TEST_CASE("Z^2 tail bounds") {
  for (double p : {1.0, 1.5, 1.9}) {
    for (double t = 1e-2; t <= 1e4; t *= 1.7) {
      const TailBound b = tail_bounds_Z2(PExponent(p), t);
      CHECK(b.lower <= b.upper);
      CHECK(b.c1 < 1.0);
    }
    for (double t : {0.5, 2.0, 10.0, 100.0}) {
      const double want = boost::math::gamma_q(1.0 / p, std::pow(t, p / 2.0) / p);
      CHECK(std::fabs(tail_probability_Z2(PExponent(p), t) - want) < 1e-10 * want);
    }
  }
  const TailBound b = tail_bounds_Z2(PExponent(1.0), 4.0);
  const double exact = tail_probability_Z2(PExponent(1.0), 4.0);
  CHECK(exact == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(b.lower <= exact);
  CHECK(exact <= b.upper);
  CHECK(tail_bounds_Z2(PExponent(1.5), std::pow(100.0, 4.0 / 3.0)).c1 > 0.99);
}

TEST_CASE("Gaussian tail integral bounds") {
  const GaussianTailIntegral k1 = gaussian_tail_integral_bound(1, 1.0);
  CHECK(k1.exact == doctest::Approx(std::exp(-0.5)).epsilon(1e-13));
  CHECK(k1.lower == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(k1.upper == doctest::Approx(2.0 * std::exp(-0.5)).epsilon(1e-15));
  for (auto [k, t] : {std::pair{3, 3.0}, {5, std::sqrt(8.0)}, {10, 5.0}, {2, 2.0}}) {
    const GaussianTailIntegral g = gaussian_tail_integral_bound(k, t);
    const double want = std::pow(2.0, (k - 1) / 2.0) * boost::math::tgamma((k + 1) / 2.0, t * t / 2.0);
    CHECK(std::fabs(g.exact - want) < 1e-11 * want);
    CHECK(g.lower <= g.exact);
    CHECK(g.exact <= g.upper);
  }
  CHECK_THROWS_AS(gaussian_tail_integral_bound(2, 1.0), std::invalid_argument);
}
