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

#ifndef LPPROJ_SAMPLING_SAMPLERS_HPP_
#define LPPROJ_SAMPLING_SAMPLERS_HPP_

#include <Eigen/Core>
#include <boost/random/gamma_distribution.hpp>

#include <cmath>
#include <cstdint>

#include "lpproj/sampling/rng.hpp"
#include "lpproj/sampling/types.hpp"

namespace lpproj {

using Engine = Philox4x32;

/// Density exp(-|x|^p / p) / (2 p^{1/p} Gamma(1 + 1/p)), drawn as
/// S * (p G)^{1/p} with G ~ Gamma(1/p, 1) and S a fair random sign.
class PGeneralizedGaussian {
 public:
  explicit PGeneralizedGaussian(double p) : p_(p), inv_p_(1.0 / p), gamma_(1.0 / p, 1.0) {}

  double operator()(Engine& rng) {
    const double magnitude = std::pow(p_ * gamma_(rng), inv_p_);
    return (rng() >> 63) ? magnitude : -magnitude;
  }

  double p() const { return p_; }

 private:
  double p_;
  double inv_p_;
  boost::random::gamma_distribution<double> gamma_;
};

/// ||x||_p for finite p, max |x_i| for p = inf.
template <class Derived>
typename Derived::Scalar lp_norm(const Eigen::MatrixBase<Derived>& x, const PExponent& p) {
  using Scalar = typename Derived::Scalar;
  if (p.is_infinite()) return x.cwiseAbs().maxCoeff();
  const Scalar q = static_cast<Scalar>(p.value());
  if (q == Scalar(2)) return x.norm();
  if (q == Scalar(1)) return x.cwiseAbs().sum();
  return std::pow(x.cwiseAbs().array().pow(q).sum(), Scalar(1) / q);
}

double sample_p_gaussian(const PExponent& p, Engine& rng);

/// Z / ||Z||_p for Z with independent p-generalized Gaussian coordinates.
Eigen::VectorXd sample_cone_measure(Eigen::Index n, const PExponent& p, Engine& rng);

/// Uniform point of B_p^n: U^{1/n} times a cone-measure point for finite p,
/// independent uniform[-1, 1] coordinates for p = inf. One engine feeds both
/// the radius and the direction.
Eigen::VectorXd sample_uniform_ball(Eigen::Index n, const PExponent& p, Engine& rng);

/// ||P_E x||_2 for E a Haar-random k-dimensional subspace of R^n, n =
/// x.size(). The rows of a k x n standard Gaussian matrix are orthonormalized
/// by modified Gram-Schmidt, with a second pass for rows whose residual
/// overlap with earlier rows exceeds 1e-10; rank-deficient draws are
/// redrawn.
double sample_haar_projection_norm(Eigen::Index k, const Eigen::Ref<const Eigen::VectorXd>& x, Engine& rng);

/// U^{1/n}.
double sample_factor_U(std::int64_t n, Engine& rng);
/// (sum_{i<=k} g_i^2)^{1/2} / (sum_{i<=n} g_i^2)^{1/2}.
double sample_factor_V(std::int64_t n, std::int64_t k, Engine& rng);
/// n^{1/p-1/2} ||Z||_2 / ||Z||_p for finite p; sqrt(mean X_i^2) over uniform
/// [-1, 1] entries for p = inf.
double sample_factor_W(std::int64_t n, const PExponent& p, Engine& rng);

/// Separate engines for the radial factor, the body (Z or X), and the
/// subspace (Gaussian frame or g-vector) of a single draw.
struct DrawEngines {
  Engine radial;
  Engine body;
  Engine subspace;

  static DrawEngines from(const RngStream& stream) {
    return {stream.substream(0).engine(), stream.substream(1).engine(), stream.substream(2).engine()};
  }
};

/// n^{1/p-1/2} ||P_E X||_2 with X uniform in B_p^n.
///
/// kDirect materializes X and a Haar frame. kProduct draws
/// U^{1/n} * W * V for finite p and sqrt(mean X_i^2) * V for p = inf; the
/// three factors come from the three engines of `engines`.
double sample_scaled_projection_norm(std::int64_t n, std::int64_t k, const PExponent& p, Method method,
                                     DrawEngines& engines);

enum class EmpiricalMean { kZ2, kZp, kG2 };

/// (1/n) sum Z_i^2, (1/n) sum |Z_i|^p or (1/n) sum g_i^2 from n fresh draws.
double sample_empirical_mean(std::int64_t n, const PExponent& p, EmpiricalMean which, Engine& rng);

/// One realization of `quantity`; dispatches to the samplers above.
double sample_quantity(Quantity quantity, std::int64_t n, std::int64_t k, const PExponent& p, Method method,
                       DrawEngines& engines);

}  // namespace lpproj

#endif  // LPPROJ_SAMPLING_SAMPLERS_HPP_
