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

#ifndef LPPROJ_SAMPLING_TYPES_HPP_
#define LPPROJ_SAMPLING_TYPES_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lpproj {

/// The exponent p of an l_p ball: a real p >= 1 or infinity.
class PExponent {
 public:
  /// Throws std::invalid_argument for p < 1 or NaN; +inf gives infinity().
  explicit PExponent(double p);
  static PExponent infinity();

  /// Parses "inf"/"infinity" or a decimal number.
  static PExponent parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// The finite value; throws for infinity.
  double value() const;
  /// 1/p with 1/inf = 0.
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / p_; }
  /// Exponent 1/p - 1/2 of the scaling n^{1/p - 1/2}.
  double scaling_exponent() const { return reciprocal() - 0.5; }

  std::string to_string() const;

  friend bool operator==(const PExponent& a, const PExponent& b) {
    return a.infinite_ == b.infinite_ && a.p_ == b.p_;
  }

 private:
  PExponent() = default;
  double p_ = 0.0;
  bool infinite_ = false;
};

/// How the subspace dimension k follows the ambient dimension n.
enum class ScheduleRule {
  kProportionalFloor,  // k = clamp(floor(lambda * n), 1, n - 1)
  kConstant,           // k = fixed value
  kPower,              // k = ceil(n^a)
  kCoPower,            // k = n - ceil(n^a)
};

struct ScheduleSpec {
  ScheduleRule rule = ScheduleRule::kProportionalFloor;
  double lambda = 0.5;
  std::int64_t constant_k = 1;
  double power = 0.5;

  /// k for ambient dimension n, clamped to [1, n - 1].
  std::int64_t k_for(std::int64_t n) const;
  /// lim k_n / n implied by the rule.
  double limit_lambda() const;
};

std::string_view to_string(ScheduleRule rule);
ScheduleRule parse_schedule_rule(std::string_view text);

/// Ambient dimension n, subspace dimension k and the limit proportion lambda.
struct Regime {
  std::int64_t n;
  std::int64_t k;
  double lambda;

  /// Throws unless n >= 2, 1 <= k <= n - 1 and 0 <= lambda <= 1.
  void validate() const;
  static Regime from_schedule(std::int64_t n, const ScheduleSpec& spec);
};

enum class Method { kDirect, kProduct };

enum class Quantity {
  kScaledNorm,
  kFactorU,
  kFactorV,
  kFactorV1,
  kFactorW,
  kMeanZ2,
  kMeanZp,
  kMeanG2,
};

std::string_view to_string(Method m);
std::string_view to_string(Quantity q);
Method parse_method(std::string_view text);
Quantity parse_quantity(std::string_view text);

/// Realizations of one quantity together with how they were produced.
struct SampleBatch {
  std::vector<double> values;
  std::int64_t n = 0;
  std::int64_t k = 0;
  PExponent p = PExponent(2.0);
  Method method = Method::kProduct;
  Quantity quantity = Quantity::kScaledNorm;
  std::uint64_t seed = 0;
};

}  // namespace lpproj

#endif  // LPPROJ_SAMPLING_TYPES_HPP_
