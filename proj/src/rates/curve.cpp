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

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "lpproj/rates/rates.hpp"

namespace lpproj {

namespace {

struct NameEntry {
  RateName name;
  std::string_view text;
  bool needs_p;
  bool needs_lambda;
};

constexpr NameEntry kNames[] = {
    {RateName::kRateU, "rate_U", false, false},
    {RateName::kRateV, "rate_V", false, true},
    {RateName::kRateV1, "rate_V1", false, true},
    {RateName::kRateW, "rate_W", true, false},
    {RateName::kRateProjection, "rate_projection", true, true},
    {RateName::kRateZ2Sum, "rate_Z2_sum", true, false},
    {RateName::kRateGMean, "rate_G_mean", false, false},
    {RateName::kRateZpMean, "rate_Zp_mean", true, false},
};

const NameEntry& entry(RateName name) {
  for (const auto& e : kNames) {
    if (e.name == name) return e;
  }
  throw std::invalid_argument("unknown rate name");
}

std::string_view speed_kind_text(SpeedKind kind) {
  switch (kind) {
    case SpeedKind::kN:
      return "n";
    case SpeedKind::kNPowPHalf:
      return "n_pow_p_half";
    case SpeedKind::kKn:
      return "k_n";
  }
  return "n";
}

}  // namespace

std::string_view to_string(RateName name) { return entry(name).text; }

RateName parse_rate_name(std::string_view text) {
  for (const auto& e : kNames) {
    if (e.text == text) return e.name;
  }
  throw std::invalid_argument("unknown rate name: " + std::string(text));
}

bool rate_needs_p(RateName name) { return entry(name).needs_p; }
bool rate_needs_lambda(RateName name) { return entry(name).needs_lambda; }

void RateQuery::validate() const {
  const auto& e = entry(name);
  if (e.needs_p != p.has_value()) {
    throw std::invalid_argument(std::string(e.text) + (e.needs_p ? ": p is required" : ": p is not accepted"));
  }
  if (e.needs_lambda != lambda.has_value()) {
    throw std::invalid_argument(std::string(e.text) +
                                (e.needs_lambda ? ": lambda is required" : ": lambda is not accepted"));
  }
  if (lambda && !(*lambda >= 0.0 && *lambda <= 1.0)) {
    throw std::invalid_argument(std::string(e.text) + ": lambda must lie in [0, 1]");
  }
  if (!std::isfinite(y)) throw std::invalid_argument(std::string(e.text) + ": y must be finite");
}

ExtendedReal evaluate(const RateQuery& q, const RateOptions& opts) {
  q.validate();
  switch (q.name) {
    case RateName::kRateU:
      return rate_U(q.y);
    case RateName::kRateV:
      return rate_V(*q.lambda, q.y);
    case RateName::kRateV1:
      return rate_V1(*q.lambda, q.y, opts);
    case RateName::kRateW:
      return rate_W(*q.p, q.y, opts);
    case RateName::kRateProjection:
      return rate_projection(*q.p, *q.lambda, q.y, opts);
    case RateName::kRateZ2Sum:
      return rate_Z2_sum(*q.p, q.y);
    case RateName::kRateGMean:
      return rate_G_mean(q.y);
    case RateName::kRateZpMean:
      return rate_Zp_mean(*q.p, q.y);
  }
  throw std::invalid_argument("unknown rate name");
}

double Speed::value(std::int64_t n, std::int64_t k) const {
  switch (kind) {
    case SpeedKind::kN:
      return static_cast<double>(n);
    case SpeedKind::kNPowPHalf:
      return std::pow(static_cast<double>(n), exponent);
    case SpeedKind::kKn:
      return static_cast<double>(k);
  }
  return static_cast<double>(n);
}

std::string Speed::to_string() const { return std::string(speed_kind_text(kind)); }

Speed speed_for(RateName name, const std::optional<PExponent>& p) {
  const bool small_p = p && p->is_finite() && p->value() < 2.0;
  if ((name == RateName::kRateProjection && small_p) || name == RateName::kRateZ2Sum) {
    return {SpeedKind::kNPowPHalf, p->value() / 2.0};
  }
  return {SpeedKind::kN, 1.0};
}

RateCurve evaluate_curve(RateName name, const std::optional<PExponent>& p, const std::optional<double>& lambda,
                         const std::vector<double>& ys, int workers, const RateOptions& opts) {
  for (std::size_t i = 1; i < ys.size(); ++i) {
    if (!(ys[i] > ys[i - 1])) throw std::invalid_argument("rate curve: grid must be strictly increasing");
  }
  RateQuery proto{name, p, lambda, 0.0};
  proto.validate();

  RateCurve curve;
  curve.name = name;
  curve.p = p;
  curve.lambda = lambda;
  curve.speed = speed_for(name, p);
  curve.grid.resize(ys.size(), RateCurvePoint{0.0, kInfinity});

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < ys.size(); i = next.fetch_add(1)) {
      try {
        RateQuery q = proto;
        q.y = ys[i];
        curve.grid[i] = {ys[i], evaluate(q, opts)};
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(ys.size());
      }
    }
  };
  const int threads = std::max(1, std::min<int>(workers, static_cast<int>(ys.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return curve;
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 1 || !std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("grid: bad specification");
  if (count == 1) {
    if (lo != hi) throw std::invalid_argument("grid: a single point needs lo == hi");
    return {lo};
  }
  if (!(hi > lo)) throw std::invalid_argument("grid: hi must exceed lo");
  std::vector<double> ys(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) ys[i] = lo + (hi - lo) * i / (count - 1);
  ys.back() = hi;
  return ys;
}

std::string rate_curve_csv(const RateCurve& curve) {
  std::string out = "y,value\n";
  for (const auto& pt : curve.grid) {
    out += format_double(pt.y);
    out += ',';
    out += pt.value.to_string();
    out += '\n';
  }
  return out;
}

std::string rate_curve_metadata_json(const RateCurve& curve) {
  nlohmann::ordered_json j;
  j["name"] = std::string(to_string(curve.name));
  if (!curve.p) {
    j["p"] = nullptr;
  } else if (curve.p->is_infinite()) {
    j["p"] = "inf";
  } else {
    j["p"] = curve.p->value();
  }
  j["lambda"] = curve.lambda ? nlohmann::ordered_json(*curve.lambda) : nlohmann::ordered_json(nullptr);
  j["speed"] = {{"kind", curve.speed.to_string()}, {"exponent", curve.speed.exponent}};
  return j.dump(2) + "\n";
}

std::size_t validate_rate_curve_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "y,value") throw std::runtime_error("rate csv: missing `y,value` header");
  std::size_t rows = 0;
  double last_y = -INFINITY;
  while (std::getline(in, line)) {
    ++rows;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("rate csv: row " + std::to_string(rows) + " lacks a comma");
    const std::string ys = line.substr(0, comma);
    const std::string vs = line.substr(comma + 1);
    std::size_t used = 0;
    const double y = std::stod(ys, &used);
    if (used != ys.size() || !(y > last_y)) {
      throw std::runtime_error("rate csv: y not strictly increasing at row " + std::to_string(rows));
    }
    last_y = y;
    if (vs != "inf") {
      const double v = std::stod(vs, &used);
      if (used != vs.size() || !(v >= 0.0)) throw std::runtime_error("rate csv: bad value at row " + std::to_string(rows));
    }
  }
  if (rows == 0) throw std::runtime_error("rate csv: no rows");
  return rows;
}

void validate_rate_curve_metadata_json(const std::string& json) {
  const auto j = nlohmann::json::parse(json);
  if (j.size() != 4) throw std::runtime_error("rate metadata: expected exactly name, p, lambda, speed");
  const RateName name = parse_rate_name(j.at("name").get<std::string>());
  if (rate_needs_p(name) == j.at("p").is_null()) throw std::runtime_error("rate metadata: p presence mismatch");
  if (rate_needs_lambda(name) == j.at("lambda").is_null()) {
    throw std::runtime_error("rate metadata: lambda presence mismatch");
  }
  const auto& s = j.at("speed");
  const std::string kind = s.at("kind").get<std::string>();
  if (kind != "n" && kind != "n_pow_p_half" && kind != "k_n") throw std::runtime_error("rate metadata: bad speed");
  if (!s.at("exponent").is_number()) throw std::runtime_error("rate metadata: bad speed exponent");
}

}  // namespace lpproj
