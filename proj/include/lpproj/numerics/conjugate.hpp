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

#ifndef LPPROJ_NUMERICS_CONJUGATE_HPP_
#define LPPROJ_NUMERICS_CONJUGATE_HPP_

#include <Eigen/Core>

#include <functional>
#include <limits>
#include <optional>

#include "lpproj/extended_real.hpp"

namespace lpproj {

/// A convex function of one variable, finite on (domain_lower, domain_upper)
/// and +infinity elsewhere. For cumulant generating functions
/// domain_lower = -inf and evaluate(0) = 0.
struct Cgf1D {
  std::function<ExtendedReal(double)> evaluate;
  double domain_upper = std::numeric_limits<double>::infinity();
  double domain_lower = -std::numeric_limits<double>::infinity();
};

/// Value, gradient and Hessian of a two-variable convex function at a point.
struct Cgf2DJet {
  ExtendedReal value;
  Eigen::Vector2d gradient = Eigen::Vector2d::Zero();
  Eigen::Matrix2d hessian = Eigen::Matrix2d::Zero();
};

/// Upper bound t(index) <= upper that belongs to the closure of the
/// effective domain with the cgf still finite on part of it, so the
/// supremum may sit on the bound.
struct CoordinateBound {
  int index = 1;
  double upper = 0.0;
};

/// A convex function of two variables. `jet` supplies derivatives for the
/// ascent; when absent they are taken by central differences of `evaluate`.
/// Steps leaving `domain_test` are halved, or clipped onto `bound`.
struct Cgf2D {
  std::function<ExtendedReal(const Eigen::Vector2d&)> evaluate;
  std::function<bool(const Eigen::Vector2d&)> domain_test;
  std::function<Cgf2DJet(const Eigen::Vector2d&)> jet;
  std::optional<CoordinateBound> bound;
};

struct ConjugateOptions {
  /// Objective values above this mark the supremum as +infinity.
  double divergence_threshold = 1e8;
  /// Arguments beyond this magnitude with the objective still rising also
  /// mark +infinity (logarithmic divergence never reaches the threshold).
  double argument_limit = 1e12;
  /// 1-D: bracket width at which golden-section search stops.
  double argument_tolerance = 1e-11;
  /// 2-D: gradient-norm tolerance of the ascent.
  double gradient_tolerance = 1e-9;
  int max_iterations = 500;
};

struct ConjugateResult1D {
  ExtendedReal value;
  /// Maximizer of t*x - Lambda(t); meaningless when value is +infinity.
  double argmax = 0.0;
};

struct ConjugateResult2D {
  ExtendedReal value;
  Eigen::Vector2d argmax = Eigen::Vector2d::Zero();
  int iterations = 0;
  /// The supremum was approached at the domain boundary (non-steep case).
  bool on_boundary = false;
};

/// sup_t [t x - Lambda(t)]. The objective is concave; a bracket is grown
/// from a start point inside the domain (0 when admissible) in the uphill
/// direction, then refined by golden-section search.
ConjugateResult1D legendre_fenchel_1d_point(const Cgf1D& cgf, double x, const ConjugateOptions& opts = {});

ExtendedReal legendre_fenchel_1d(const Cgf1D& cgf, double x, const ConjugateOptions& opts = {});

/// sup_t [<t, x> - Lambda(t)] by damped Newton ascent: the step solves
/// (H + mu I) d = x - grad Lambda(t) with a small ridge mu (H may be
/// singular), iterates are kept strictly inside the domain, and a
/// backtracking line search enforces ascent. Throws NonConvergenceError
/// (carrying the last objective value) when the iteration budget runs out.
ConjugateResult2D legendre_fenchel_2d_point(const Cgf2D& cgf, const Eigen::Vector2d& x,
                                            const ConjugateOptions& opts = {},
                                            const std::optional<Eigen::Vector2d>& start = std::nullopt);

ExtendedReal legendre_fenchel_2d(const Cgf2D& cgf, const Eigen::Vector2d& x, const ConjugateOptions& opts = {});

}  // namespace lpproj

#endif  // LPPROJ_NUMERICS_CONJUGATE_HPP_
