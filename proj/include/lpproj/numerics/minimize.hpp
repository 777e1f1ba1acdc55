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

#ifndef LPPROJ_NUMERICS_MINIMIZE_HPP_
#define LPPROJ_NUMERICS_MINIMIZE_HPP_

#include <cmath>
#include <stdexcept>

#include "lpproj/extended_real.hpp"

namespace lpproj {

struct MinimizeResult {
  double argmin;
  ExtendedReal min;
};

/// Minimizes f over [lo, hi]: a uniform scan of `grid_points` points
/// (endpoints included) brackets the smallest value, then golden-section
/// search narrows the bracket to width `tol`. f may return +infinity off
/// its effective domain; if it is +infinity on the whole grid the result is
/// (lo, +infinity). Equal values resolve to the smallest argument.
template <class F>
MinimizeResult minimize_scalar(F&& f, double lo, double hi, double tol, int grid_points = 64) {
  if (!(lo < hi)) throw std::invalid_argument("minimize_scalar: need lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("minimize_scalar: tol must be positive");
  if (grid_points < 3) grid_points = 3;

  auto eval = [&f](double x) { return ExtendedReal(f(x)); };
  MinimizeResult best{lo, kInfinity};
  auto consider = [&best](double x, const ExtendedReal& v) {
    if (v < best.min || (v == best.min && v.is_finite() && x < best.argmin)) best = {x, v};
  };

  const int last = grid_points - 1;
  int best_index = 0;
  for (int i = 0; i <= last; ++i) {
    const double x = i == last ? hi : lo + (hi - lo) * (static_cast<double>(i) / last);
    const ExtendedReal v = eval(x);
    if (v < best.min) best_index = i;
    consider(x, v);
  }
  if (best.min.is_infinite()) return {lo, kInfinity};

  auto grid_x = [&](int i) { return i >= last ? hi : lo + (hi - lo) * (static_cast<double>(i) / last); };
  double a = grid_x(best_index > 0 ? best_index - 1 : 0);
  double b = grid_x(best_index < last ? best_index + 1 : last);

  constexpr double kInvPhi = 0.6180339887498948482;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  ExtendedReal fc = eval(c);
  ExtendedReal fd = eval(d);
  consider(c, fc);
  consider(d, fd);
  for (int iter = 0; iter < 400 && (b - a) > tol; ++iter) {
    // Ties keep the left sub-bracket, so flat stretches resolve to the smaller argument.
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
      consider(d, fd);
    }
  }
  consider(a, eval(a));
  consider(b, eval(b));
  return best;
}

}  // namespace lpproj

#endif  // LPPROJ_NUMERICS_MINIMIZE_HPP_
