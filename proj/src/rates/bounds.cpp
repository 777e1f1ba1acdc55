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

#include "lpproj/rates/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lpproj/numerics/quadrature.hpp"
#include "lpproj/numerics/special.hpp"
#include "lpproj/rates/cgf.hpp"

namespace lpproj {

TailBound tail_bounds_Z2(const PExponent& p, double t) {
  if (p.is_infinite() || p.value() < 1.0 || p.value() >= 2.0) {
    throw std::invalid_argument("tail_bounds_Z2: p must lie in [1, 2)");
  }
  if (!(t > 0.0)) throw std::invalid_argument("tail_bounds_Z2: t must be positive");
  const double q = p.value();
  const double s = std::pow(t, q / 2.0);
  TailBound tb;
  tb.t = t;
  tb.p = p;
  tb.b = 1.0 / q + (q - 1.0) / 2.0 * std::log(t) / s;
  tb.c1 = s / (s + 1.0);
  tb.upper = 2.0 * std::exp(-tb.b * s);
  tb.lower = tb.c1 * std::exp(-tb.b * s);
  return tb;
}

double tail_probability_Z2(const PExponent& p, double t) {
  if (p.is_infinite()) throw std::invalid_argument("tail_probability_Z2: p must be finite");
  if (!(t >= 0.0)) throw std::invalid_argument("tail_probability_Z2: t must be nonnegative");
  const double q = p.value();
  const double a = std::sqrt(t);
  // P(|Z| >= a) = Gamma(1/p, a^p/p) / Gamma(1/p); integrate the shifted
  // density on [a, inf) so deep tails keep full relative accuracy.
  const double ha = std::pow(a, q) / q;
  auto f = [q, ha](double x) { return std::exp(ha - std::pow(x, q) / q); };
  // Beyond a the exponent drops at rate at least a^{p-1} (or 1/p at a = 0).
  const double rate = a > 0.0 ? std::max(std::pow(a, q - 1.0), 1e-3) : 1.0;
  double L = a + 1.0 / rate;
  while (std::pow(L, q) / q - ha < 60.0) L = a + 2.0 * (L - a);
  const auto res = integrate(f, a, L, cgf_quadrature_config());
  return std::exp(std::log(res.value) - ha - log_p_gaussian_normalizer(q));
}

GaussianTailIntegral gaussian_tail_integral_bound(int k, double t) {
  if (k < 1) throw std::invalid_argument("gaussian_tail_integral_bound: k must be >= 1");
  const double threshold = std::max(std::sqrt(2.0 * (k - 1)), 1.0);
  if (!(t >= threshold)) {
    throw std::invalid_argument("gaussian_tail_integral_bound: t must be >= max(sqrt(2(k-1)), 1), got " +
                                std::to_string(t));
  }
  const double base = std::pow(t, k - 1) * std::exp(-0.5 * t * t);
  // Shifted by the value at t so the integrand starts at 1.
  auto f = [k, t](double r) { return std::pow(r / t, k) * std::exp(-0.5 * (r - t) * (r + t)); };
  double L = t + 1.0;
  while (0.5 * (L - t) * (L + t) - k * std::log(L / t) < 60.0) L = t + 2.0 * (L - t);
  const auto res = integrate(f, t, L, cgf_quadrature_config());
  const double exact = res.value * std::pow(t, k) * std::exp(-0.5 * t * t);
  return {base, 2.0 * base, exact};
}

}  // namespace lpproj
