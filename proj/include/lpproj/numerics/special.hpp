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

#ifndef LPPROJ_NUMERICS_SPECIAL_HPP_
#define LPPROJ_NUMERICS_SPECIAL_HPP_

namespace lpproj {

/// log Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// log B(a, b).
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b), the Beta(a, b) CDF at x.
///
/// Evaluated by the modified Lentz continued fraction, switching to
/// 1 - I_{1-x}(b, a) when x lies above the mean-ish split point
/// (a + 1) / (a + b + 2) so the fraction always converges quickly.
/// Throws std::domain_error unless 0 <= x <= 1 and a, b > 0.
double regularized_incomplete_beta(double x, double a, double b);

/// Upper tail 1 - I_x(a, b), computed without cancellation so that
/// values far below machine epsilon keep full relative accuracy.
double regularized_incomplete_beta_complement(double x, double a, double b);

/// log I_x(a, b) and log(1 - I_x(a, b)); finite wherever the tail is
/// positive, even when the tail itself underflows a double.
double log_regularized_incomplete_beta(double x, double a, double b);
double log_regularized_incomplete_beta_complement(double x, double a, double b);

}  // namespace lpproj

#endif  // LPPROJ_NUMERICS_SPECIAL_HPP_
