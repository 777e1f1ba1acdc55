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

#include "lpproj/sampling/samplers.hpp"

#include <Eigen/Dense>
#include <boost/random/normal_distribution.hpp>

#include <stdexcept>

namespace lpproj {
namespace {

void require_finite(const PExponent& p, const char* what) {
  if (p.is_infinite()) throw std::invalid_argument(std::string(what) + ": p must be finite");
}

void require_subspace(std::int64_t n, std::int64_t k) {
  if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument("need 1 <= k <= n-1");
}

double uniform_symmetric(Engine& rng) { return 2.0 * rng.uniform_open() - 1.0; }

}  // namespace

double sample_p_gaussian(const PExponent& p, Engine& rng) {
  require_finite(p, "sample_p_gaussian");
  PGeneralizedGaussian dist(p.value());
  return dist(rng);
}

Eigen::VectorXd sample_cone_measure(Eigen::Index n, const PExponent& p, Engine& rng) {
  require_finite(p, "sample_cone_measure");
  if (n < 1) throw std::invalid_argument("sample_cone_measure: n must be >= 1");
  PGeneralizedGaussian dist(p.value());
  Eigen::VectorXd z(n);
  while (true) {
    for (Eigen::Index i = 0; i < n; ++i) z(i) = dist(rng);
    const double norm = lp_norm(z, p);
    if (norm > 0.0) return z / norm;
  }
}

Eigen::VectorXd sample_uniform_ball(Eigen::Index n, const PExponent& p, Engine& rng) {
  if (n < 1) throw std::invalid_argument("sample_uniform_ball: n must be >= 1");
  if (p.is_infinite()) {
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = uniform_symmetric(rng);
    return y;
  }
  const double radius = std::pow(rng.uniform_open(), 1.0 / static_cast<double>(n));
  return radius * sample_cone_measure(n, p, rng);
}

double sample_haar_projection_norm(Eigen::Index k, const Eigen::Ref<const Eigen::VectorXd>& x, Engine& rng) {
  const Eigen::Index n = x.size();
  if (k < 1 || k > n - 1) throw std::invalid_argument("sample_haar_projection_norm: need 1 <= k <= n-1");
  using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  boost::random::normal_distribution<double> normal;
  RowMatrix frame(k, n);

  while (true) {
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) frame(i, j) = normal(rng);
    }
    bool rank_deficient = false;
    for (Eigen::Index i = 0; i < k && !rank_deficient; ++i) {
      const double original = frame.row(i).norm();
      for (Eigen::Index j = 0; j < i; ++j) frame.row(i) -= frame.row(j).dot(frame.row(i)) * frame.row(j);
      double residual = frame.row(i).norm();
      if (!(residual > 1e-12 * original)) {
        rank_deficient = true;
        break;
      }
      double overlap = 0.0;
      for (Eigen::Index j = 0; j < i; ++j) {
        overlap = std::max(overlap, std::fabs(frame.row(j).dot(frame.row(i))) / residual);
      }
      if (overlap > 1e-10) {
        for (Eigen::Index j = 0; j < i; ++j) frame.row(i) -= frame.row(j).dot(frame.row(i)) * frame.row(j);
        residual = frame.row(i).norm();
      }
      frame.row(i) /= residual;
    }
    if (!rank_deficient) return (frame * x).norm();
  }
}

double sample_factor_U(std::int64_t n, Engine& rng) {
  if (n < 1) throw std::invalid_argument("sample_factor_U: n must be >= 1");
  return std::pow(rng.uniform_open(), 1.0 / static_cast<double>(n));
}

double sample_factor_V(std::int64_t n, std::int64_t k, Engine& rng) {
  require_subspace(n, k);
  boost::random::normal_distribution<double> normal;
  while (true) {
    double head = 0.0;
    double tail = 0.0;
    for (std::int64_t i = 0; i < k; ++i) {
      const double g = normal(rng);
      head += g * g;
    }
    for (std::int64_t i = k; i < n; ++i) {
      const double g = normal(rng);
      tail += g * g;
    }
    const double total = head + tail;
    if (total > 0.0) return std::sqrt(head / total);
  }
}

double sample_factor_W(std::int64_t n, const PExponent& p, Engine& rng) {
  if (n < 1) throw std::invalid_argument("sample_factor_W: n must be >= 1");
  const double nd = static_cast<double>(n);
  if (p.is_infinite()) {
    double sum = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      const double u = uniform_symmetric(rng);
      sum += u * u;
    }
    return std::sqrt(sum / nd);
  }
  const double q = p.value();
  if (q == 2.0) return 1.0;
  // |Z|^q = q * Gamma(1/q), so only Z^2 needs a power.
  boost::random::gamma_distribution<double> gamma(1.0 / q, 1.0);
  const double square_exponent = 2.0 / q;
  while (true) {
    double sum2 = 0.0;
    double sump = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      const double zq = q * gamma(rng);
      sump += zq;
      sum2 += q == 1.0 ? zq * zq : std::pow(zq, square_exponent);
    }
    if (sump > 0.0) return std::pow(nd, 1.0 / q - 0.5) * std::sqrt(sum2) / std::pow(sump, 1.0 / q);
  }
}

double sample_scaled_projection_norm(std::int64_t n, std::int64_t k, const PExponent& p, Method method,
                                     DrawEngines& engines) {
  require_subspace(n, k);
  if (method == Method::kDirect) {
    Eigen::VectorXd x;
    if (p.is_infinite()) {
      x = sample_uniform_ball(n, p, engines.body);
    } else {
      const double radius = sample_factor_U(n, engines.radial);
      x = radius * sample_cone_measure(n, p, engines.body);
    }
    const double scale = std::pow(static_cast<double>(n), p.scaling_exponent());
    return scale * sample_haar_projection_norm(k, x, engines.subspace);
  }
  const double v = sample_factor_V(n, k, engines.subspace);
  if (p.is_infinite()) return sample_factor_W(n, p, engines.body) * v;
  const double u = sample_factor_U(n, engines.radial);
  return u * sample_factor_W(n, p, engines.body) * v;
}

double sample_empirical_mean(std::int64_t n, const PExponent& p, EmpiricalMean which, Engine& rng) {
  if (n < 1) throw std::invalid_argument("sample_empirical_mean: n must be >= 1");
  double sum = 0.0;
  if (which == EmpiricalMean::kG2) {
    boost::random::normal_distribution<double> normal;
    for (std::int64_t i = 0; i < n; ++i) {
      const double g = normal(rng);
      sum += g * g;
    }
  } else {
    require_finite(p, "sample_empirical_mean");
    PGeneralizedGaussian dist(p.value());
    for (std::int64_t i = 0; i < n; ++i) {
      const double z = dist(rng);
      sum += which == EmpiricalMean::kZ2 ? z * z : std::pow(std::fabs(z), p.value());
    }
  }
  return sum / static_cast<double>(n);
}

double sample_quantity(Quantity quantity, std::int64_t n, std::int64_t k, const PExponent& p, Method method,
                       DrawEngines& engines) {
  switch (quantity) {
    case Quantity::kScaledNorm:
      return sample_scaled_projection_norm(n, k, p, method, engines);
    case Quantity::kFactorU:
      return sample_factor_U(n, engines.radial);
    case Quantity::kFactorV:
      return sample_factor_V(n, k, engines.subspace);
    case Quantity::kFactorV1:
      return sample_factor_U(n, engines.radial) * sample_factor_V(n, k, engines.subspace);
    case Quantity::kFactorW:
      return sample_factor_W(n, p, engines.body);
    case Quantity::kMeanZ2:
      return sample_empirical_mean(n, p, EmpiricalMean::kZ2, engines.body);
    case Quantity::kMeanZp:
      return sample_empirical_mean(n, p, EmpiricalMean::kZp, engines.body);
    case Quantity::kMeanG2:
      return sample_empirical_mean(n, p, EmpiricalMean::kG2, engines.subspace);
  }
  throw std::invalid_argument("sample_quantity: unknown quantity");
}

}  // namespace lpproj
