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

#ifndef LPPROJ_CLI_CONFIG_HPP_
#define LPPROJ_CLI_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lpproj/rates/rates.hpp"
#include "lpproj/sampling/types.hpp"
#include "lpproj/verify/tail.hpp"

namespace lpproj::cli {

/// Bad command line or config file; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { kSample, kRate, kVerifyLdp, kVerifyRepresentation, kOracle, kCheckBounds };

std::string_view to_string(Command c);
Command parse_command(std::string_view text);

inline constexpr std::uint64_t kDefaultSeed = 0;

struct RunConfig {
  Command command = Command::kSample;

  // Regime: either k directly, or a schedule rule (lambda/power).
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> k;
  ScheduleSpec schedule;
  bool schedule_given = false;
  std::optional<double> lambda;
  std::optional<PExponent> p;

  Method method = Method::kProduct;
  Quantity quantity = Quantity::kScaledNorm;
  std::int64_t trials = 100000;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
  std::string out;

  // rate
  std::optional<RateName> name;
  std::vector<double> grid;

  // verify-ldp
  std::optional<Interval> interval;
  std::vector<std::int64_t> n_schedule;
  bool exact = false;
  double tolerance = 0.05;
  double level = 0.99;

  // verify-representation
  double alpha = 0.001;

  // oracle
  std::string what;
  double a1 = 0.0;
  double a2 = 1.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double t = 0.0;

  // check-bounds
  std::vector<PExponent> p_list;
  std::vector<double> t_grid;
  std::vector<std::pair<int, double>> gaussian_points;

  /// k for the given n: --k if set, else the schedule.
  std::int64_t k_for(std::int64_t n_value) const;
};

/// Parses `lpproj <command> [flags]`, optionally with `--config file.json`
/// whose keys are flag names (with '_' for '-'); flags on the command line
/// override the file. Throws UsageError naming the offending key or flag.
/// Returns nullopt after printing help.
std::optional<RunConfig> parse_config(int argc, const char* const* argv);

/// Parses `lo:hi:count` with inclusive endpoints.
std::vector<double> parse_grid(std::string_view text);

}  // namespace lpproj::cli

#endif  // LPPROJ_CLI_CONFIG_HPP_
