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

#ifndef LPPROJ_RATES_CGF_HPP_
#define LPPROJ_RATES_CGF_HPP_

#include <Eigen/Core>

#include "lpproj/extended_real.hpp"
#include "lpproj/numerics/conjugate.hpp"
#include "lpproj/numerics/quadrature.hpp"
#include "lpproj/sampling/types.hpp"

namespace lpproj {

/// Tolerances used by every cgf quadrature below; relative only.
QuadratureConfig cgf_quadrature_config();

/// log of p^{1/p} Gamma(1 + 1/p), the half-line normalizer of the
/// p-generalized Gaussian density.
double log_p_gaussian_normalizer(double p);

/// Density (2 p^{1/p} Gamma(1+1/p))^{-1} exp(-|x|^p / p).
double p_gaussian_density(double p, double x);

/// E|Z|^r for Z p-generalized Gaussian, by quadrature.
double p_gaussian_abs_moment(double p, double r);

/// log E exp(t1 Z^2 + t2 |Z|^p) for 2 <= p < inf, with gradient (tilted
/// means of Z^2 and |Z|^p) and Hessian (tilted covariance).
/// Infinite outside t2 < 1/p (p > 2, plus the face t2 = 1/p with t1 < 0)
/// or t1 + t2 < 1/2 (p = 2).
Cgf2DJet cgf_pair_jet(double p, double t1, double t2);

ExtendedReal cgf_pair(const PExponent& p, double t1, double t2);

/// cgf_pair packaged for legendre_fenchel_2d. For p > 2 the bound
/// t2 <= 1/p is closed: the cgf stays finite there when t1 < 0.
Cgf2D cgf_pair_function(const PExponent& p);

struct Cgf1DJet {
  double value;
  double derivative;
  double second_derivative;
};

/// log(2 * int_0^1 exp(t x^2) dx), an entire function of t.
double cgf_infty(double t);
Cgf1DJet cgf_infty_jet(double t);

/// cgf_infty(t) - log 2, i.e. log E exp(t X^2) for X uniform on [0, 1].
/// This is the form whose conjugate vanishes at E X^2 = 1/3.
Cgf1D cgf_infty_centered_function();

/// -1/2 log(1 - 2t) on t < 1/2, the cgf of a squared standard Gaussian.
ExtendedReal cgf_chi2(double t);
Cgf1D cgf_chi2_function();

/// log E exp(t |Z|^p) in closed form, -(1/p) log(1 - p t) on t < 1/p.
ExtendedReal cgf_abs_power(double p, double t);
/// The same quantity by quadrature.
ExtendedReal cgf_abs_power_quadrature(double p, double t);
Cgf1D cgf_abs_power_function(double p);

struct MomentReport {
  /// E Z^2 by quadrature.
  double m;
  /// p^{p/2} Gamma(1+3/p) / (3 Gamma(1+1/p)).
  double candidate_pp2;
  /// p^{2/p} Gamma(1+3/p) / (3 Gamma(1+1/p)).
  double candidate_p2p;
};

MomentReport moment_m_report(const PExponent& p);

/// E Z^2 for finite p, by quadrature.
double moment_m(const PExponent& p);

}  // namespace lpproj

#endif  // LPPROJ_RATES_CGF_HPP_
