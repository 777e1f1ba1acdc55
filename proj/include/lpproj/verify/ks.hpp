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

#ifndef LPPROJ_VERIFY_KS_HPP_
#define LPPROJ_VERIFY_KS_HPP_

#include <cstdint>
#include <span>
#include <string>

namespace lpproj {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
};

/// Survival function of the Kolmogorov distribution, P(K > x).
double kolmogorov_survival(double x);

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value at
/// effective size n1 n2 / (n1 + n2). Throws on an empty sample.
KsResult ks_two_sample(std::span<const double> sample1, std::span<const double> sample2);

}  // namespace lpproj

#endif  // LPPROJ_VERIFY_KS_HPP_
