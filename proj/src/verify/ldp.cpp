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

#include "lpproj/verify/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "lpproj/numerics/minimize.hpp"
#include "lpproj/sampling/rng.hpp"
#include "lpproj/verify/oracles.hpp"

namespace lpproj {

namespace {

constexpr double kRaySpan = 10.0;

nlohmann::ordered_json extended_json(const ExtendedReal& v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

nlohmann::ordered_json p_json(const std::optional<PExponent>& p) {
  if (!p) return nullptr;
  if (p->is_infinite()) return "inf";
  return p->value();
}

bool exact_oracle_supported(const LdpConfig& cfg) {
  if (cfg.rate == RateName::kRateV || cfg.rate == RateName::kRateV1) return true;
  return cfg.rate == RateName::kRateProjection && cfg.p && cfg.p->is_finite() && cfg.p->value() == 2.0;
}

}  // namespace

Quantity quantity_for_rate(RateName rate) {
  switch (rate) {
    case RateName::kRateU:
      return Quantity::kFactorU;
    case RateName::kRateV:
      return Quantity::kFactorV;
    case RateName::kRateV1:
      return Quantity::kFactorV1;
    case RateName::kRateW:
      return Quantity::kFactorW;
    case RateName::kRateProjection:
      return Quantity::kScaledNorm;
    case RateName::kRateZ2Sum:
      return Quantity::kMeanZ2;
    case RateName::kRateGMean:
      return Quantity::kMeanG2;
    case RateName::kRateZpMean:
      return Quantity::kMeanZp;
  }
  throw std::invalid_argument("unknown rate name");
}

ExtendedReal rate_infimum(RateName rate, const std::optional<PExponent>& p, double lambda, double a,
                          const ExtendedReal& b, const RateOptions& opts) {
  RateQuery q{rate, p, std::nullopt, a};
  if (rate_needs_lambda(rate)) q.lambda = lambda;
  q.validate();
  const double hi = b.is_finite() ? b.value() : a + kRaySpan * std::max(1.0, std::fabs(a));
  if (!(hi > a)) throw std::invalid_argument("rate_infimum: empty interval");
  auto f = [&](double y) {
    RateQuery qy = q;
    qy.y = y;
    return evaluate(qy, opts);
  };
  return minimize_scalar(f, a, hi, 1e-10 * std::max(1.0, hi - a), 64).min;
}

LdpReport run_ldp_convergence(const LdpConfig& cfg) {
  if (cfg.n_schedule.empty()) throw std::invalid_argument("run_ldp_convergence: empty n schedule");
  cfg.interval.validate();
  if (cfg.use_exact_oracle && !exact_oracle_supported(cfg)) {
    throw std::invalid_argument("run_ldp_convergence: no exact oracle for " + std::string(to_string(cfg.rate)));
  }
  const std::optional<PExponent> p = rate_needs_p(cfg.rate) ? cfg.p : std::nullopt;
  if (rate_needs_p(cfg.rate) && !p) throw std::invalid_argument("run_ldp_convergence: p is required");

  LdpReport report;
  report.rate_name = std::string(to_string(cfg.rate));
  report.p = p;
  report.lambda = cfg.lambda;
  report.interval = cfg.interval;
  report.tolerance = cfg.tolerance;

  const ExtendedReal theoretical =
      rate_infimum(cfg.rate, p, cfg.lambda, cfg.interval.a, cfg.interval.b, cfg.rate_options);
  {
    const double a = cfg.interval.a;
    const double hi = cfg.interval.b.is_finite() ? cfg.interval.b.value() : a + kRaySpan * std::max(1.0, std::fabs(a));
    const double eps = 1e-6 * (hi - a);
    const ExtendedReal interior = rate_infimum(cfg.rate, p, cfg.lambda, a + eps, ExtendedReal(hi - eps), cfg.rate_options);
    const bool differ = interior.is_finite() != theoretical.is_finite() ||
                        (interior.is_finite() && std::fabs(interior.value() - theoretical.value()) >
                                                     cfg.tolerance * std::max(1e-12, theoretical.value()));
    if (differ) {
      report.warnings.push_back("interval is not a continuity set: closure infimum " + theoretical.to_string() +
                                ", interior infimum " + interior.to_string());
    }
  }

  const Speed speed = speed_for(cfg.rate, p);
  for (std::int64_t n : cfg.n_schedule) {
    const Regime regime = Regime::from_schedule(n, cfg.schedule);
    LdpRow row;
    row.n = n;
    row.k = regime.k;
    row.speed_value = speed.value(n, regime.k);
    row.theoretical_rate = theoretical;

    if (cfg.use_exact_oracle) {
      const double a2 = std::max(cfg.interval.b.is_finite() ? cfg.interval.b.value() : 1.0, cfg.interval.a);
      const double log_p = cfg.rate == RateName::kRateV
                               ? exact_V_interval_log_probability(n, regime.k, cfg.interval.a, a2)
                               : exact_V1_interval_log_probability(n, regime.k, cfg.interval.a, a2);
      row.log_p_hat = log_p;
      row.p_hat = row.ci_low = row.ci_high = std::exp(log_p);
      if (std::isfinite(log_p)) {
        row.empirical_rate = std::max(0.0, -log_p / row.speed_value);
        row.rate_lower_bound = *row.empirical_rate;
      }
    } else {
      QuantityConfig qc{quantity_for_rate(cfg.rate), n, regime.k, p.value_or(PExponent(2.0)), cfg.method};
      const std::uint64_t seed = mix64(cfg.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(n));
      const TailEstimate est = estimate_interval_probability(qc, cfg.interval, cfg.trials, seed, cfg.workers, cfg.level);
      row.hits = est.hits;
      row.trials = est.trials;
      row.p_hat = est.p_hat;
      row.ci_low = est.ci_low;
      row.ci_high = est.ci_high;
      const EmpiricalRate er = empirical_rate(est, row.speed_value);
      row.empirical_rate = er.rate;
      row.rate_lower_bound = er.rate_low;
    }
    report.rows.push_back(row);
  }

  bool verdict = theoretical.is_finite();
  if (verdict) {
    const double th = theoretical.value();
    std::vector<double> errors;
    for (const auto& row : report.rows) {
      if (!row.empirical_rate) {
        errors.push_back(INFINITY);
      } else {
        errors.push_back(std::fabs(*row.empirical_rate - th));
      }
    }
    const double last = errors.back();
    verdict = std::isfinite(last) && last <= cfg.tolerance * (th > 0.0 ? th : 1.0);
    const std::size_t from = errors.size() >= 3 ? errors.size() - 3 : 0;
    for (std::size_t i = from + 1; i < errors.size(); ++i) {
      if (errors[i] > errors[i - 1]) verdict = false;
    }
  }
  report.verdict = verdict;
  return report;
}

std::string ldp_report_json(const LdpReport& report) {
  nlohmann::ordered_json j;
  j["rate_name"] = report.rate_name;
  j["p"] = p_json(report.p);
  j["lambda"] = report.lambda;
  j["interval"] = nlohmann::ordered_json::array({report.interval.a, extended_json(report.interval.b)});
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["n"] = r.n;
    row["k"] = r.k;
    row["p_hat"] = r.p_hat;
    if (r.log_p_hat) {
      row["log_p_hat"] = std::isfinite(*r.log_p_hat) ? nlohmann::ordered_json(*r.log_p_hat) : nlohmann::ordered_json("-inf");
    }
    row["ci"] = {r.ci_low, r.ci_high};
    row["empirical_rate"] = r.empirical_rate ? nlohmann::ordered_json(*r.empirical_rate) : nlohmann::ordered_json(nullptr);
    row["theoretical_rate"] = extended_json(r.theoretical_rate);
    row["speed_value"] = r.speed_value;
    row["hits"] = r.hits;
    row["trials"] = r.trials;
    row["rate_lower_bound"] = r.rate_lower_bound;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["verdict"] = report.verdict;
  j["tolerance"] = report.tolerance;
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

void validate_ldp_report_json(const std::string& json) {
  const auto j = nlohmann::json::parse(json);
  for (const char* key : {"rate_name", "p", "lambda", "interval", "rows", "verdict", "tolerance"}) {
    if (!j.contains(key)) throw std::runtime_error(std::string("ldp report: missing key ") + key);
  }
  parse_rate_name(j["rate_name"].get<std::string>());
  if (!j["interval"].is_array() || j["interval"].size() != 2) throw std::runtime_error("ldp report: bad interval");
  if (!j["verdict"].is_boolean()) throw std::runtime_error("ldp report: verdict must be boolean");
  for (const auto& row : j["rows"]) {
    for (const char* key : {"n", "k", "p_hat", "ci", "empirical_rate", "theoretical_rate"}) {
      if (!row.contains(key)) throw std::runtime_error(std::string("ldp report row: missing key ") + key);
    }
    const double p_hat = row["p_hat"].get<double>();
    const double lo = row["ci"][0].get<double>();
    const double hi = row["ci"][1].get<double>();
    if (!(lo <= p_hat && p_hat <= hi && lo >= 0.0 && hi <= 1.0)) throw std::runtime_error("ldp report row: bad ci");
    const bool exact = row.contains("log_p_hat") && row["log_p_hat"].is_number();
    if (p_hat == 0.0 && !exact && !row["empirical_rate"].is_null()) {
      throw std::runtime_error("ldp report row: rate present without hits");
    }
  }
}

}  // namespace lpproj
