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

#include "lpproj/sampling/types.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "lpproj/extended_real.hpp"

namespace lpproj {

PExponent::PExponent(double p) {
  if (std::isnan(p) || p < 1.0) throw std::invalid_argument("p must be >= 1 or \"inf\"");
  infinite_ = std::isinf(p);
  p_ = infinite_ ? 0.0 : p;
}

PExponent PExponent::infinity() {
  PExponent e;
  e.infinite_ = true;
  return e;
}

PExponent PExponent::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("p must be >= 1 or \"inf\"");
  }
  return PExponent(v);
}

double PExponent::value() const {
  if (infinite_) throw std::domain_error("PExponent: value() of infinity");
  return p_;
}

std::string PExponent::to_string() const { return infinite_ ? "inf" : format_double(p_); }

std::int64_t ScheduleSpec::k_for(std::int64_t n) const {
  std::int64_t k = 1;
  switch (rule) {
    case ScheduleRule::kProportionalFloor:
      k = static_cast<std::int64_t>(std::floor(lambda * static_cast<double>(n)));
      break;
    case ScheduleRule::kConstant:
      k = constant_k;
      break;
    case ScheduleRule::kPower:
      k = static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(n), power)));
      break;
    case ScheduleRule::kCoPower:
      k = n - static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(n), power)));
      break;
  }
  return std::clamp<std::int64_t>(k, 1, n - 1);
}

double ScheduleSpec::limit_lambda() const {
  switch (rule) {
    case ScheduleRule::kProportionalFloor:
      return lambda;
    case ScheduleRule::kConstant:
      return 0.0;
    case ScheduleRule::kPower:
      return power < 1.0 ? 0.0 : 1.0;
    case ScheduleRule::kCoPower:
      return power < 1.0 ? 1.0 : 0.0;
  }
  return lambda;
}

std::string_view to_string(ScheduleRule rule) {
  switch (rule) {
    case ScheduleRule::kProportionalFloor: return "proportional_floor";
    case ScheduleRule::kConstant: return "constant";
    case ScheduleRule::kPower: return "power";
    case ScheduleRule::kCoPower: return "co_power";
  }
  return "?";
}

ScheduleRule parse_schedule_rule(std::string_view text) {
  if (text == "proportional_floor" || text == "proportional-floor") return ScheduleRule::kProportionalFloor;
  if (text == "constant") return ScheduleRule::kConstant;
  if (text == "power") return ScheduleRule::kPower;
  if (text == "co_power" || text == "co-power") return ScheduleRule::kCoPower;
  throw std::invalid_argument("unknown schedule rule: " + std::string(text));
}

void Regime::validate() const {
  if (n < 2) throw std::invalid_argument("regime: n must be >= 2");
  if (k < 1 || k > n - 1) throw std::invalid_argument("regime: k must satisfy 1 <= k <= n-1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("regime: lambda must lie in [0,1]");
}

Regime Regime::from_schedule(std::int64_t n, const ScheduleSpec& spec) {
  Regime r{n, spec.k_for(n), spec.limit_lambda()};
  r.validate();
  return r;
}

std::string_view to_string(Method m) { return m == Method::kDirect ? "direct" : "product"; }

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::kScaledNorm: return "scaled_norm";
    case Quantity::kFactorU: return "factor_U";
    case Quantity::kFactorV: return "factor_V";
    case Quantity::kFactorV1: return "factor_V1";
    case Quantity::kFactorW: return "factor_W";
    case Quantity::kMeanZ2: return "mean_Z2";
    case Quantity::kMeanZp: return "mean_Zp";
    case Quantity::kMeanG2: return "mean_G2";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  if (text == "direct") return Method::kDirect;
  if (text == "product") return Method::kProduct;
  throw std::invalid_argument("method must be direct or product");
}

Quantity parse_quantity(std::string_view text) {
  for (Quantity q : {Quantity::kScaledNorm, Quantity::kFactorU, Quantity::kFactorV, Quantity::kFactorV1,
                     Quantity::kFactorW, Quantity::kMeanZ2, Quantity::kMeanZp, Quantity::kMeanG2}) {
    if (to_string(q) == text) return q;
  }
  throw std::invalid_argument("unknown quantity: " + std::string(text));
}

}  // namespace lpproj
