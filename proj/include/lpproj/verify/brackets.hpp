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

#ifndef LPPROJ_VERIFY_BRACKETS_HPP_
#define LPPROJ_VERIFY_BRACKETS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "lpproj/sampling/types.hpp"

namespace lpproj {

struct BracketRow {
  double t = 0.0;
  /// Power k of the Gaussian tail integral; 0 for the Z^2 tail.
  int k = 0;
  double lower = 0.0;
  double upper = 0.0;
  double exact = 0.0;
  bool inside = false;
};

struct BracketReport {
  /// "tail_Z2" or "gaussian_tail_integral".
  std::string kind;
  std::string p;
  std::vector<BracketRow> rows;
  bool all_inside = true;
};

/// P(Z^2 >= t) by quadrature against tail_bounds_Z2 on each grid point.
BracketReport check_tail_bracket(const PExponent& p, const std::vector<double>& t_grid);

/// The Gaussian tail integral against its bounds at each (k, t).
BracketReport check_gaussian_tail_bracket(const std::vector<std::pair<int, double>>& points);

/// Log-spaced grid of `count` points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int count);

std::string bracket_report_json(const std::vector<BracketReport>& reports);
void validate_bracket_report_json(const std::string& json);

}  // namespace lpproj

#endif  // LPPROJ_VERIFY_BRACKETS_HPP_
