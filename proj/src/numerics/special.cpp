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

#include "lpproj/numerics/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lpproj/numerics/errors.hpp"

namespace lpproj {
namespace {

constexpr int kMaxFractionTerms = 1000000;

// Continued fraction for I_x(a,b) / front(x,a,b); converges fast for
// x < (a + 1) / (a + b + 2).
double beta_fraction(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxFractionTerms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) return h;
  }
  throw NonConvergenceError("regularized_incomplete_beta: continued fraction", h, 0.0);
}

// x^a (1-x)^b / (a B(a,b)), in log space.
double log_front(double x, double a, double b) {
  return a * std::log(x) + b * std::log1p(-x) - log_beta(a, b) - std::log(a);
}

void check_args(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0) || !(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("regularized_incomplete_beta: need 0<=x<=1, a>0, b>0");
  }
}

// Lower tail when `lower` is true, upper tail otherwise; x strictly inside (0,1).
double incomplete_beta_tail(double x, double a, double b, bool lower) {
  if (x < (a + 1.0) / (a + b + 2.0)) {
    const double direct = std::exp(log_front(x, a, b)) * beta_fraction(x, a, b);
    return lower ? direct : 1.0 - direct;
  }
  const double swapped = std::exp(log_front(1.0 - x, b, a)) * beta_fraction(1.0 - x, b, a);
  return lower ? 1.0 - swapped : swapped;
}

// log of the tail in incomplete_beta_tail.
double log_incomplete_beta_tail(double x, double a, double b, bool lower) {
  const bool direct = x < (a + 1.0) / (a + b + 2.0);
  const double log_small = direct ? log_front(x, a, b) + std::log(beta_fraction(x, a, b))
                                  : log_front(1.0 - x, b, a) + std::log(beta_fraction(1.0 - x, b, a));
  return direct == lower ? log_small : std::log1p(-std::exp(log_small));
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || std::isinf(x)) throw std::domain_error("log_gamma: x must be positive and finite");
  return std::lgamma(x);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || std::isinf(a) || std::isinf(b)) {
    throw std::domain_error("log_beta: a and b must be positive and finite");
  }
  // Extended precision keeps the cancellation between large log-gammas small.
  const long double la = a;
  const long double lb = b;
  return static_cast<double>(std::lgammal(la) + std::lgammal(lb) - std::lgammal(la + lb));
}

double regularized_incomplete_beta(double x, double a, double b) {
  check_args(x, a, b);
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  return incomplete_beta_tail(x, a, b, true);
}

double regularized_incomplete_beta_complement(double x, double a, double b) {
  check_args(x, a, b);
  if (x == 0.0) return 1.0;
  if (x == 1.0) return 0.0;
  return incomplete_beta_tail(x, a, b, false);
}

double log_regularized_incomplete_beta(double x, double a, double b) {
  check_args(x, a, b);
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (x == 1.0) return 0.0;
  return log_incomplete_beta_tail(x, a, b, true);
}

double log_regularized_incomplete_beta_complement(double x, double a, double b) {
  check_args(x, a, b);
  if (x == 0.0) return 0.0;
  if (x == 1.0) return -std::numeric_limits<double>::infinity();
  return log_incomplete_beta_tail(x, a, b, false);
}

}  // namespace lpproj
