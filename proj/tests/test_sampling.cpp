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

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "doctest.h"
#include "lpproj/sampling/batch.hpp"
#include "lpproj/sampling/rng.hpp"
#include "lpproj/sampling/samplers.hpp"
#include "lpproj/verify/ks.hpp"

using namespace lpproj;

namespace {

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  for (double x : v) m.sd += (x - m.mean) * (x - m.mean);
  m.sd = std::sqrt(m.sd / static_cast<double>(v.size() - 1));
  return m;
}

// One-sample Kolmogorov p-value of `v` against `cdf`.
template <class Cdf>
double one_sample_ks(std::vector<double> v, Cdf cdf) {
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = cdf(v[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return kolmogorov_survival(std::sqrt(n) * d);
}

std::vector<double> batch(Quantity q, std::int64_t n, std::int64_t k, const PExponent& p, Method m,
                          std::int64_t count, std::uint64_t seed, int workers = 1) {
  BatchRequest r;
  r.quantity = q;
  r.n = n;
  r.k = k;
  r.p = p;
  r.method = m;
  r.count = count;
  r.seed = seed;
  r.workers = workers;
  return generate_batch(r).values;
}

}  // namespace

TEST_CASE("Philox4x32-10 known answer") {
  Philox4x32 rng(0, 0);
  CHECK(rng() == ((std::uint64_t{0xe169c58d} << 32) | 0x6627e8d5u));
  CHECK(rng() == ((std::uint64_t{0x9b00dbd8} << 32) | 0xbc57ac4cu));
}

TEST_CASE("streams are reproducible and distinct") {
  const RngStream s{42, 7, 0};
  auto a = s.engine();
  auto b = s.engine();
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
  std::set<std::uint64_t> firsts;
  for (std::uint64_t j = 0; j < 64; ++j) firsts.insert(s.substream(j).engine()());
  firsts.insert(RngStream{42, 8, 0}.engine()());
  firsts.insert(RngStream{43, 7, 0}.engine()());
  CHECK(firsts.size() == 66);

  Philox4x32 u(3, 4);
  for (int i = 0; i < 100000; ++i) {
    const double x = u.uniform_open();
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
  }
}

TEST_CASE("PExponent parsing") {
  CHECK(PExponent::parse("inf").is_infinite());
  CHECK(PExponent::parse("1.5").value() == 1.5);
  CHECK_THROWS_AS(PExponent::parse("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(PExponent::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(PExponent::parse("nan"), std::invalid_argument);
  CHECK_THROWS_AS(PExponent(0.999), std::invalid_argument);
  CHECK(PExponent(4.0).scaling_exponent() == doctest::Approx(-0.25));
  CHECK(PExponent::infinity().scaling_exponent() == -0.5);
}

TEST_CASE("schedules") {
  ScheduleSpec s;
  s.lambda = 0.5;
  CHECK(s.k_for(10) == 5);
  s.lambda = 0.0;
  CHECK(s.k_for(10) == 1);
  s.lambda = 1.0;
  CHECK(s.k_for(10) == 9);
  s.rule = ScheduleRule::kPower;
  s.power = 0.5;
  CHECK(s.k_for(100) == 10);
  CHECK(s.k_for(101) == 11);
  CHECK(s.limit_lambda() == 0.0);
  s.rule = ScheduleRule::kCoPower;
  CHECK(s.k_for(100) == 90);
  CHECK(s.limit_lambda() == 1.0);
  s.rule = ScheduleRule::kConstant;
  s.constant_k = 3;
  CHECK(s.k_for(50) == 3);
  CHECK_THROWS_AS((Regime{5, 5, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS(parse_schedule_rule("nope"), std::invalid_argument);
}

TEST_CASE("ball and cone samplers land on the right sets") {
  Engine rng(11, 0);
  for (const char* ps : {"1", "1.5", "2", "3", "inf"}) {
    const PExponent p = PExponent::parse(ps);
    for (int i = 0; i < 200; ++i) {
      const Eigen::VectorXd x = sample_uniform_ball(20, p, rng);
      REQUIRE(lp_norm(x, p) <= 1.0 + 1e-12);
      if (p.is_finite()) REQUIRE(std::fabs(lp_norm(sample_cone_measure(20, p, rng), p) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("p-generalized Gaussian has E|Z|^p = 1") {
  for (double q : {1.0, 1.5, 3.0, 4.0}) {
    Engine rng(5, static_cast<std::uint64_t>(q * 10));
    std::vector<double> v(200000);
    for (double& x : v) x = std::pow(std::fabs(sample_p_gaussian(PExponent(q), rng)), q);
    const Moments m = moments(v);
    CHECK(std::fabs(m.mean - 1.0) < 5.0 * m.sd / std::sqrt(200000.0));
  }
}

TEST_CASE("factor W is exactly one at p = 2") {
  Engine rng(1, 1);
  for (int i = 0; i < 100; ++i) CHECK(sample_factor_W(30, PExponent(2.0), rng) == 1.0);
}

TEST_CASE("V^2 follows the Beta law") {
  for (auto [n, k] : {std::pair<std::int64_t, std::int64_t>{10, 3}, {50, 25}, {7, 6}}) {
    std::vector<double> v = batch(Quantity::kFactorV, n, k, PExponent(2.0), Method::kProduct, 40000, 9);
    for (double& x : v) x *= x;
    const Moments m = moments(v);
    CHECK(std::fabs(m.mean - static_cast<double>(k) / n) < 5.0 * m.sd / std::sqrt(40000.0));
    const double a = 0.5 * k;
    const double b = 0.5 * (n - k);
    CHECK(one_sample_ks(v, [a, b](double x) { return boost::math::ibeta(a, b, x); }) > 1e-3);
  }
}

TEST_CASE("Haar projection of a unit vector") {
  Engine rng(21, 0);
  const Eigen::Index n = 12;
  for (Eigen::Index k : {1, 5, 11}) {
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(n);
    e1(0) = 1.0;
    std::vector<double> v(20000);
    for (double& x : v) x = std::pow(sample_haar_projection_norm(k, e1, rng), 2);
    const Moments m = moments(v);
    CHECK(std::fabs(m.mean - static_cast<double>(k) / n) < 5.0 * m.sd / std::sqrt(20000.0));
    // Same law as V^2 for any unit vector.
    const double a = 0.5 * k;
    const double b = 0.5 * (n - k);
    CHECK(one_sample_ks(v, [a, b](double x) { return boost::math::ibeta(a, b, x); }) > 1e-3);
  }
  CHECK_THROWS_AS(sample_haar_projection_norm(12, Eigen::VectorXd::Ones(12), rng), std::invalid_argument);
}

TEST_CASE("Haar projection is rotation invariant") {
  Engine rng(22, 0);
  const Eigen::Index n = 9;
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(n);
  e1(0) = 2.0;
  const Eigen::VectorXd spread = 2.0 * Eigen::VectorXd::LinSpaced(n, 1.0, 3.0).normalized();
  std::vector<double> a(20000), b(20000);
  for (double& x : a) x = sample_haar_projection_norm(4, e1, rng);
  for (double& x : b) x = sample_haar_projection_norm(4, spread, rng);
  CHECK(ks_two_sample(a, b).p_value > 1e-3);
}

TEST_CASE("product factors are uncorrelated") {
  const std::int64_t count = 50000;
  const auto u = batch(Quantity::kFactorU, 20, 5, PExponent(3.0), Method::kProduct, count, 4);
  const auto v = batch(Quantity::kFactorV, 20, 5, PExponent(3.0), Method::kProduct, count, 4);
  const auto w = batch(Quantity::kFactorW, 20, 5, PExponent(3.0), Method::kProduct, count, 4);
  auto corr = [&](const std::vector<double>& x, const std::vector<double>& y) {
    const Moments mx = moments(x), my = moments(y);
    double c = 0.0;
    for (std::int64_t i = 0; i < count; ++i) c += (x[i] - mx.mean) * (y[i] - my.mean);
    return c / ((count - 1) * mx.sd * my.sd);
  };
  const double limit = 5.0 / std::sqrt(static_cast<double>(count));
  CHECK(std::fabs(corr(u, v)) < limit);
  CHECK(std::fabs(corr(u, w)) < limit);
  CHECK(std::fabs(corr(v, w)) < limit);
}

TEST_CASE("batches do not depend on the worker count") {
  for (Method m : {Method::kDirect, Method::kProduct}) {
    const auto one = batch(Quantity::kScaledNorm, 15, 4, PExponent(1.5), m, 3 * kChunkSize + 17, 77, 1);
    const auto three = batch(Quantity::kScaledNorm, 15, 4, PExponent(1.5), m, 3 * kChunkSize + 17, 77, 3);
    CHECK(one == three);
  }
  const auto other = batch(Quantity::kScaledNorm, 15, 4, PExponent(1.5), Method::kProduct, 100, 78);
  CHECK(other != batch(Quantity::kScaledNorm, 15, 4, PExponent(1.5), Method::kProduct, 100, 77));
}

TEST_CASE("direct and product sampling agree in law") {
  for (const char* ps : {"1", "1.5", "2", "3", "inf"}) {
    const PExponent p = PExponent::parse(ps);
    const auto d = batch(Quantity::kScaledNorm, 12, 4, p, Method::kDirect, 20000, 3);
    const auto q = batch(Quantity::kScaledNorm, 12, 4, p, Method::kProduct, 20000, 3);
    CAPTURE(ps);
    CHECK(ks_two_sample(d, q).p_value > 1e-3);
    CHECK(*std::min_element(d.begin(), d.end()) >= 0.0);
  }
}

TEST_CASE("p = 2 product is U^(1/n) V") {
  const auto s = batch(Quantity::kScaledNorm, 30, 10, PExponent(2.0), Method::kProduct, 20000, 6);
  const auto v1 = batch(Quantity::kFactorV1, 30, 10, PExponent(2.0), Method::kProduct, 20000, 8);
  CHECK(ks_two_sample(s, v1).p_value > 1e-3);
}

TEST_CASE("sample files round-trip through their validators") {
  BatchRequest r;
  r.n = 8;
  r.k = 3;
  r.p = PExponent::infinity();
  r.count = 50;
  r.seed = 5;
  const SampleBatch b = generate_batch(r);
  CHECK(validate_sample_csv(sample_batch_csv(b)) == 50);
  validate_sample_metadata_json(sample_batch_metadata_json(b), 50);
  CHECK_THROWS(validate_sample_metadata_json(sample_batch_metadata_json(b), 49));
  CHECK_THROWS(validate_sample_csv("value\n1.0\nfoo\n"));
  CHECK_THROWS(validate_sample_csv("x\n1.0\n"));
}
