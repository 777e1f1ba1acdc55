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

#ifndef LPPROJ_EXTENDED_REAL_HPP_
#define LPPROJ_EXTENDED_REAL_HPP_

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lpproj {

/// A real number or +infinity. Rate functions and conjugates live in
/// (-inf, +inf]; -infinity and NaN are rejected on construction.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;

  // Implicit from double so closed forms read naturally; IEEE +inf maps to
  // the infinite state.
  ExtendedReal(double v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v) || v == -std::numeric_limits<double>::infinity()) {
      throw std::domain_error("ExtendedReal: value must be finite or +inf");
    }
    infinite_ = std::isinf(v);
    value_ = infinite_ ? 0.0 : v;
  }

  static ExtendedReal infinity() {
    ExtendedReal r;
    r.infinite_ = true;
    return r;
  }

  bool is_finite() const { return !infinite_; }
  bool is_infinite() const { return infinite_; }

  /// Finite value; throws for +infinity.
  double value() const {
    if (infinite_) throw std::domain_error("ExtendedReal: value() of +inf");
    return value_;
  }

  /// IEEE view, +inf for the infinite state.
  double to_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  /// `inf` token for +infinity, shortest round-trip decimal otherwise.
  std::string to_string() const;

  friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtendedReal(a.value_ + b.value_);
  }
  ExtendedReal& operator+=(const ExtendedReal& o) { return *this = *this + o; }

  /// Scaling by a nonnegative factor; 0 * inf is 0 (the 0 log 0 convention).
  friend ExtendedReal scale(double c, const ExtendedReal& a) {
    if (c < 0) throw std::domain_error("ExtendedReal: negative scale");
    if (a.infinite_) return c == 0.0 ? ExtendedReal(0.0) : infinity();
    return ExtendedReal(c * a.value_);
  }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.infinite_ == b.infinite_ && a.value_ == b.value_;
  }
  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>(const ExtendedReal& a, const ExtendedReal& b) { return b < a; }
  friend bool operator<=(const ExtendedReal& a, const ExtendedReal& b) { return !(b < a); }
  friend bool operator>=(const ExtendedReal& a, const ExtendedReal& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const ExtendedReal& a) {
    return os << a.to_string();
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

inline const ExtendedReal kInfinity = ExtendedReal::infinity();

/// Shortest decimal that round-trips a double (%.17g); locale-free.
std::string format_double(double v);

}  // namespace lpproj

#endif  // LPPROJ_EXTENDED_REAL_HPP_
