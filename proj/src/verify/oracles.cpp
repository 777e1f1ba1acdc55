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

#include "lpproj/verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpproj/numerics/special.hpp"

namespace lpproj {

namespace {

void require_regime(std::int64_t n, std::int64_t k, const char* who) {
  if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument(std::string(who) + ": need n >= 2, 1 <= k <= n-1");
}

}  // namespace

QuadratureConfig exact_oracle_config() {
  QuadratureConfig cfg;
  cfg.abs_tol = 1e-300;
  cfg.rel_tol = 1e-10;
  cfg.max_subdivisions = 4000;
  return cfg;
}

double exact_V_interval_probability(std::int64_t n, std::int64_t k, double a1, double a2) {
  require_regime(n, k, "exact_V_interval_probability");
  if (!(a1 >= 0.0 && a1 <= a2)) throw std::invalid_argument("exact_V_interval_probability: need 0 <= a1 <= a2");
  const double a = 0.5 * static_cast<double>(k);
  const double b = 0.5 * static_cast<double>(n - k);
  const double x1 = std::min(a1 * a1, 1.0);
  const double x2 = std::min(a2 * a2, 1.0);
  if (x1 >= x2) return 0.0;
  // Difference of lower CDFs below the mean, of upper tails above it.
  if (x1 > a / (a + b)) {
    return std::max(0.0, regularized_incomplete_beta_complement(x1, a, b) -
                             regularized_incomplete_beta_complement(x2, a, b));
  }
  return std::max(0.0, regularized_incomplete_beta(x2, a, b) - regularized_incomplete_beta(x1, a, b));
}

double exact_V_interval_log_probability(std::int64_t n, std::int64_t k, double a1, double a2) {
  require_regime(n, k, "exact_V_interval_log_probability");
  if (!(a1 >= 0.0 && a1 <= a2)) throw std::invalid_argument("exact_V_interval_log_probability: need 0 <= a1 <= a2");
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const double a = 0.5 * static_cast<double>(k);
  const double b = 0.5 * static_cast<double>(n - k);
  const double x1 = std::min(a1 * a1, 1.0);
  const double x2 = std::min(a2 * a2, 1.0);
  if (x1 >= x2) return kNegInf;
  // log(e^big - e^small) = big + log1p(-e^(small - big)).
  auto log_diff = [&](double big, double small) {
    if (!(small < big)) return kNegInf;
    return big + std::log1p(-std::exp(small - big));
  };
  if (x1 > a / (a + b)) {
    return log_diff(log_regularized_incomplete_beta_complement(x1, a, b),
                    log_regularized_incomplete_beta_complement(x2, a, b));
  }
  return log_diff(log_regularized_incomplete_beta(x2, a, b), log_regularized_incomplete_beta(x1, a, b));
}

double exact_V1_interval_probability(std::int64_t n, std::int64_t k, double a1, double a2,
                                     const QuadratureConfig& cfg) {
  return std::clamp(std::exp(exact_V1_interval_log_probability(n, k, a1, a2, cfg)), 0.0, 1.0);
}

double exact_V1_interval_log_probability(std::int64_t n, std::int64_t k, double a1, double a2,
                                         const QuadratureConfig& cfg) {
  require_regime(n, k, "exact_V1_interval_probability");
  if (!(a1 >= 0.0 && a1 <= a2)) throw std::invalid_argument("exact_V1_interval_probability: need 0 <= a1 <= a2");
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  if (a1 >= 1.0) return kNegInf;
  const double nn = static_cast<double>(n);
  // u = exp(-w): the radial density n u^{n-1} du becomes n exp(-n w) dw.
  auto log_integrand = [&](double w) {
    const double e = std::exp(w);
    return std::log(nn) - nn * w +
           exact_V_interval_log_probability(n, k, std::min(a1 * e, 1.0), std::min(a2 * e, 1.0));
  };

  // Past w = -log a1 the event is empty.
  const double w_end = a1 > 0.0 ? -std::log(a1) : std::numeric_limits<double>::infinity();
  // Locate the bulk on a log-spaced probe grid; g(w) <= log n - n w bounds the rest.
  const double w_probe = std::min(w_end, 50.0);
  double reference = log_integrand(0.0);
  double w_peak = 0.0;
  for (int i = 0; i <= 256; ++i) {
    const double w = std::min(w_probe, (1e-3 / nn) * std::pow(w_probe * nn / 1e-3, i / 256.0));
    const double g = log_integrand(w);
    if (g > reference) {
      reference = g;
      w_peak = w;
    }
  }
  if (reference == kNegInf) return kNegInf;
  const double w_cap = std::min(w_end, (745.0 + std::log(nn) - reference) / nn);

  std::vector<double> bp{0.0};
  for (double s = 1.0 / nn; s < w_cap; s *= 4.0) bp.push_back(s);
  if (a2 < 1.0 && -std::log(a2) < w_cap) bp.push_back(-std::log(a2));
  if (w_peak > 0.0 && w_peak < w_cap) bp.push_back(w_peak);
  bp.push_back(w_cap);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  const auto res = integrate_panels([&](double w) { return std::exp(log_integrand(w) - reference); }, bp, cfg);
  if (!(res.value > 0.0)) return kNegInf;
  return std::min(0.0, reference + std::log(res.value));
}

}  // namespace lpproj
