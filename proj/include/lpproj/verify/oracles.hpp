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

#ifndef LPPROJ_VERIFY_ORACLES_HPP_
#define LPPROJ_VERIFY_ORACLES_HPP_

#include <cstdint>

#include "lpproj/numerics/quadrature.hpp"

namespace lpproj {

/// Relative tolerance 1e-10 with a negligible absolute floor.
QuadratureConfig exact_oracle_config();

/// P(V in [a1, a2]) with V^2 ~ Beta(k/2, (n-k)/2).
double exact_V_interval_probability(std::int64_t n, std::int64_t k, double a1, double a2);

/// log P(V in [a1, a2]); -inf for an empty event. Stays finite where the
/// probability itself underflows.
double exact_V_interval_log_probability(std::int64_t n, std::int64_t k, double a1, double a2);

/// P(U^{1/n} V in [a1, a2]) by quadrature over the radial factor. The
/// default tolerances are relative, so deep tails keep their digits.
double exact_V1_interval_probability(std::int64_t n, std::int64_t k, double a1, double a2,
                                     const QuadratureConfig& cfg = exact_oracle_config());

/// log of exact_V1_interval_probability, for tails below the double range.
double exact_V1_interval_log_probability(std::int64_t n, std::int64_t k, double a1, double a2,
                                         const QuadratureConfig& cfg = exact_oracle_config());

}  // namespace lpproj

#endif  // LPPROJ_VERIFY_ORACLES_HPP_
