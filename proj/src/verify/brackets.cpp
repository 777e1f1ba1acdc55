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

#include "lpproj/verify/brackets.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "lpproj/rates/bounds.hpp"

namespace lpproj {

BracketReport check_tail_bracket(const PExponent& p, const std::vector<double>& t_grid) {
  BracketReport report;
  report.kind = "tail_Z2";
  report.p = p.to_string();
  for (double t : t_grid) {
    const TailBound tb = tail_bounds_Z2(p, t);
    BracketRow row;
    row.t = t;
    row.lower = tb.lower;
    row.upper = tb.upper;
    row.exact = tail_probability_Z2(p, t);
    row.inside = row.lower <= row.exact && row.exact <= row.upper;
    report.all_inside = report.all_inside && row.inside;
    report.rows.push_back(row);
  }
  return report;
}

BracketReport check_gaussian_tail_bracket(const std::vector<std::pair<int, double>>& points) {
  BracketReport report;
  report.kind = "gaussian_tail_integral";
  for (const auto& [k, t] : points) {
    const GaussianTailIntegral g = gaussian_tail_integral_bound(k, t);
    BracketRow row;
    row.t = t;
    row.k = k;
    row.lower = g.lower;
    row.upper = g.upper;
    row.exact = g.exact;
    // The lower bound is attained at k = 1; allow for quadrature rounding.
    const double slack = 1e-12 * g.lower;
    row.inside = g.lower - slack <= g.exact && g.exact <= g.upper;
    report.all_inside = report.all_inside && row.inside;
    report.rows.push_back(row);
  }
  return report;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi > lo) || count < 2) throw std::invalid_argument("log_grid: need 0 < lo < hi, count >= 2");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::string bracket_report_json(const std::vector<BracketReport>& reports) {
  auto arr = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["kind"] = r.kind;
    if (!r.p.empty()) j["p"] = r.p;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
      nlohmann::ordered_json o;
      o["t"] = row.t;
      if (r.kind == "gaussian_tail_integral") o["k"] = row.k;
      o["lower"] = row.lower;
      o["exact"] = row.exact;
      o["upper"] = row.upper;
      o["inside"] = row.inside;
      rows.push_back(o);
    }
    j["rows"] = rows;
    j["all_inside"] = r.all_inside;
    all = all && r.all_inside;
    arr.push_back(j);
  }
  nlohmann::ordered_json out;
  out["reports"] = arr;
  out["all_inside"] = all;
  return out.dump(2) + "\n";
}

void validate_bracket_report_json(const std::string& json) {
  const auto j = nlohmann::json::parse(json);
  if (!j.contains("reports") || !j["reports"].is_array() || !j.contains("all_inside")) {
    throw std::runtime_error("bracket report: missing reports or all_inside");
  }
  for (const auto& r : j["reports"]) {
    if (!r.contains("kind") || !r.contains("rows") || !r.contains("all_inside")) {
      throw std::runtime_error("bracket report: malformed entry");
    }
    for (const auto& row : r["rows"]) {
      for (const char* key : {"t", "lower", "exact", "upper", "inside"}) {
        if (!row.contains(key)) throw std::runtime_error(std::string("bracket report row: missing key ") + key);
      }
    }
  }
}

}  // namespace lpproj
