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

#ifndef LPPROJ_NUMERICS_ERRORS_HPP_
#define LPPROJ_NUMERICS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace lpproj {

/// An iterative kernel ran out of budget before meeting its tolerance.
/// Carries the last estimate so callers can report it.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}

  double estimate() const { return estimate_; }
  double error() const { return error_; }

 private:
  double estimate_;
  double error_;
};

/// A parameter combination for which no result is defined (e.g. the
/// p < 2, lambda = 0 projection regime).
class UnsupportedRegimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace lpproj

#endif  // LPPROJ_NUMERICS_ERRORS_HPP_
