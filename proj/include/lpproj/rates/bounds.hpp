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

#ifndef LPPROJ_RATES_BOUNDS_HPP_
#define LPPROJ_RATES_BOUNDS_HPP_

#include "lpproj/sampling/types.hpp"

namespace lpproj {

/// Two-sided bound c1(t) exp(-b(t) t^{p/2}) <= P(Z^2 >= t) <= 2 exp(-b(t) t^{p/2})
/// for p-generalized Gaussian Z, p in [1, 2).
struct TailBound {
  double t;
  PExponent p = PExponent(1.0);
  double lower;
  double upper;
  double b;
  double c1;
};

TailBound tail_bounds_Z2(const PExponent& p, double t);

/// P(Z^2 >= t) by quadrature.
double tail_probability_Z2(const PExponent& p, double t);

struct GaussianTailIntegral {
  double lower;
  double upper;
  double exact;
};

/// Bounds t^{k-1} e^{-t^2/2} <= int_t^inf r^k e^{-r^2/2} dr <= 2 t^{k-1} e^{-t^2/2},
/// valid for t >= max(sqrt(2(k-1)), 1); std::invalid_argument below that.
GaussianTailIntegral gaussian_tail_integral_bound(int k, double t);

}  // namespace lpproj

#endif  // LPPROJ_RATES_BOUNDS_HPP_
