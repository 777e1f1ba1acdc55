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

#include "lpproj/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "lpproj/cli/atomic_file.hpp"
#include "lpproj/sampling/batch.hpp"
#include "lpproj/verify/brackets.hpp"

namespace lpproj::cli {

namespace {

struct OptSpec {
  const char* name;
  bool flag;
  const char* help;
};

// Shared option descriptions; each command picks a subset by name.
const std::map<std::string, OptSpec>& option_table() {
  static const std::map<std::string, OptSpec> table = {
      {"n", {"n", false, "ambient dimension"}},
      {"k", {"k", false, "subspace dimension"}},
      {"lambda", {"lambda", false, "limit ratio k/n in [0,1]"}},
      {"rule", {"rule", false, "k schedule: proportional_floor, constant, power, co_power"}},
      {"power", {"power", false, "exponent a of the power / co_power schedules"}},
      {"p", {"p", false, "ball exponent, >= 1 or inf"}},
      {"method", {"method", false, "direct or product"}},
      {"quantity", {"quantity", false, "sampled quantity (scaled_norm, factor_U, ...)"}},
      {"trials", {"trials", false, "number of draws"}},
      {"seed", {"seed", false, "root seed (default 0)"}},
      {"workers", {"workers", false, "worker threads (default LPPROJ_WORKERS or all cores)"}},
      {"out", {"out", false, "output path"}},
      {"name", {"name", false, "rate function name"}},
      {"grid", {"grid", false, "lo:hi:count, inclusive"}},
      {"interval", {"interval", false, "a:b event interval; b may be inf"}},
      {"n_schedule", {"n-schedule", false, "comma-separated list of n"}},
      {"exact", {"exact", true, "use the exact oracle instead of Monte Carlo"}},
      {"tolerance", {"tolerance", false, "relative tolerance of the final rate"}},
      {"level", {"level", false, "confidence level of the binomial intervals"}},
      {"alpha", {"alpha", false, "KS rejection threshold"}},
      {"what", {"what", false, "m_p, exact_V, exact_V1, cgf_pair, cgf_infty"}},
      {"a1", {"a1", false, "lower interval end"}},
      {"a2", {"a2", false, "upper interval end"}},
      {"t1", {"t1", false, "first cgf argument"}},
      {"t2", {"t2", false, "second cgf argument"}},
      {"t", {"t", false, "cgf argument"}},
      {"p_list", {"p-list", false, "comma-separated exponents for the Z^2 bracket"}},
      {"t_grid", {"t-grid", false, "lo:hi:count, log-spaced"}},
      {"gaussian", {"gaussian", false, "comma-separated k:t pairs for the Gaussian tail bracket"}},
  };
  return table;
}

const std::map<Command, std::vector<std::string>>& command_options() {
  static const std::map<Command, std::vector<std::string>> table = {
      {Command::kSample,
       {"n", "k", "lambda", "rule", "power", "p", "method", "quantity", "trials", "seed", "workers", "out"}},
      {Command::kRate, {"name", "p", "lambda", "grid", "workers", "out"}},
      {Command::kVerifyLdp,
       {"name", "p", "lambda", "k", "rule", "power", "interval", "n_schedule", "trials", "seed", "workers", "exact",
        "tolerance", "level", "method", "out"}},
      {Command::kVerifyRepresentation,
       {"n", "k", "lambda", "rule", "power", "p", "trials", "seed", "workers", "alpha", "out"}},
      {Command::kOracle, {"what", "p", "n", "k", "a1", "a2", "t1", "t2", "t", "out"}},
      {Command::kCheckBounds, {"p_list", "t_grid", "gaussian", "out"}},
  };
  return table;
}

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::kSample, "sample"},
    {Command::kRate, "rate"},
    {Command::kVerifyLdp, "verify-ldp"},
    {Command::kVerifyRepresentation, "verify-representation"},
    {Command::kOracle, "oracle"},
    {Command::kCheckBounds, "check-bounds"},
};

std::string_view describe(Command c) {
  switch (c) {
    case Command::kSample: return "Draw projections by the direct or product method and write CSV";
    case Command::kRate: return "Evaluate a rate function on a grid";
    case Command::kVerifyLdp: return "Compare empirical decay rates against a rate function";
    case Command::kVerifyRepresentation: return "KS test of direct against product sampling";
    case Command::kOracle: return "Evaluate an exact reference quantity";
    case Command::kCheckBounds: return "Check tail-probability brackets over a log grid";
  }
  return "";
}

std::string flag_of(const std::string& key) { return std::string("--") + option_table().at(key).name; }

template <class T>
T parse_number(std::string_view text, const std::string& what) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw UsageError("invalid value for " + what + ": '" + std::string(text) + "'");
  return value;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

PExponent parse_p(std::string_view text, const std::string& what) {
  try {
    return PExponent::parse(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(what + ": p must be >= 1 or \"inf\", got '" + std::string(text) + "'");
  }
}

std::string json_to_token(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) return format_double(v.get<double>());
  if (v.is_array()) {
    std::string joined;
    for (const auto& e : v) {
      if (!joined.empty()) joined += ',';
      joined += json_to_token(e, key);
    }
    return joined;
  }
  throw UsageError("config key '" + key + "' has an unsupported value type");
}

}  // namespace

std::string_view to_string(Command c) {
  for (const auto& [cmd, text] : kCommands) {
    if (cmd == c) return text;
  }
  return "?";
}

Command parse_command(std::string_view text) {
  for (const auto& [cmd, t] : kCommands) {
    if (t == text) return cmd;
  }
  throw UsageError("unknown command: " + std::string(text));
}

std::int64_t RunConfig::k_for(std::int64_t n_value) const {
  if (k) {
    if (*k < 1 || *k > n_value - 1) throw UsageError("--k must satisfy 1 <= k <= n-1");
    return *k;
  }
  return schedule.k_for(n_value);
}

std::vector<double> parse_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("grid must be lo:hi:count, got '" + std::string(text) + "'");
  const double lo = parse_number<double>(parts[0], "grid lo");
  const double hi = parse_number<double>(parts[1], "grid hi");
  const int count = parse_number<int>(parts[2], "grid count");
  try {
    return linear_grid(lo, hi, count);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(e.what()));
  }
}

std::optional<RunConfig> parse_config(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  // Pull out --config first; its keys become leading flags so the command
  // line wins under the take-last policy.
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" || args[i].rfind("--config=", 0) == 0) {
      if (args[i] == "--config") {
        if (i + 1 >= args.size()) throw UsageError("--config needs a path");
        config_path = args[i + 1];
        args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
      } else {
        config_path = args[i].substr(9);
        args.erase(args.begin() + static_cast<long>(i));
      }
      break;
    }
  }

  std::optional<Command> command;
  std::size_t command_pos = args.size();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].rfind("-", 0) == 0) continue;
    for (const auto& [cmd, text] : kCommands) {
      if (args[i] == text) {
        command = cmd;
        command_pos = i;
      }
    }
    break;
  }

  std::vector<std::string> injected;
  if (config_path) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(*config_path));
    } catch (const std::exception& e) {
      throw UsageError("cannot read config " + *config_path + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    if (j.contains("command")) {
      const Command from_file = parse_command(j["command"].get<std::string>());
      if (command && *command != from_file) throw UsageError("config command disagrees with the command line");
      command = from_file;
    }
    if (!command) throw UsageError("no command given");
    const auto& allowed = command_options().at(*command);
    for (const auto& [key, value] : j.items()) {
      if (key == "command") continue;
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw UsageError("unknown config key '" + key + "' for command " + std::string(to_string(*command)));
      }
      const auto& spec = option_table().at(key);
      if (spec.flag) {
        if (!value.is_boolean()) throw UsageError("config key '" + key + "' must be boolean");
        if (value.get<bool>()) injected.push_back(flag_of(key));
      } else {
        injected.push_back(flag_of(key));
        injected.push_back(json_to_token(value, key));
      }
    }
  }

  std::vector<std::string> tokens;
  if (command) {
    tokens.push_back(std::string(to_string(*command)));
    tokens.insert(tokens.end(), injected.begin(), injected.end());
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i != command_pos) tokens.push_back(args[i]);
    }
  } else {
    tokens = args;
  }

  CLI::App app{"Random projections of lp balls: sampling, rate functions, verification", "lpproj"};
  app.require_subcommand(1);
  std::map<std::string, std::string> values;
  std::map<std::string, bool> flags;
  std::map<Command, CLI::App*> subs;
  for (const auto& [cmd, text] : kCommands) {
    CLI::App* sub = app.add_subcommand(std::string(text), std::string(describe(cmd)));
    subs[cmd] = sub;
    for (const auto& key : command_options().at(cmd)) {
      const auto& spec = option_table().at(key);
      if (spec.flag) {
        sub->add_flag(flag_of(key), flags[std::string(text) + "/" + key], spec.help);
      } else {
        sub->add_option(flag_of(key), values[std::string(text) + "/" + key], spec.help)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
      }
    }
  }

  std::vector<std::string> reversed(tokens.rbegin(), tokens.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  for (const auto& [cmd, sub] : subs) {
    if (sub->parsed()) command = cmd;
  }
  if (!command) throw UsageError("no command given");

  RunConfig cfg;
  cfg.command = *command;
  const std::string prefix = std::string(to_string(*command)) + "/";
  auto has = [&](const std::string& key) {
    auto* opt = subs[*command]->get_option_no_throw(flag_of(key));
    return opt != nullptr && opt->count() > 0;
  };
  auto str = [&](const std::string& key) { return values[prefix + key]; };
  auto num = [&](const std::string& key) { return parse_number<double>(str(key), flag_of(key)); };
  auto integer = [&](const std::string& key) { return parse_number<std::int64_t>(str(key), flag_of(key)); };
  auto require = [&](const std::string& key) {
    if (!has(key)) throw UsageError(flag_of(key) + " is required for " + std::string(to_string(*command)));
  };
  auto wrap = [](auto&& fn) {
    try {
      return fn();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  };

  if (has("n")) cfg.n = integer("n");
  if (has("k")) cfg.k = integer("k");
  if (has("lambda")) {
    cfg.lambda = num("lambda");
    if (!(*cfg.lambda >= 0.0 && *cfg.lambda <= 1.0)) throw UsageError("--lambda must lie in [0, 1]");
    cfg.schedule.lambda = *cfg.lambda;
    cfg.schedule_given = true;
  }
  if (has("rule")) {
    cfg.schedule.rule = wrap([&] { return parse_schedule_rule(str("rule")); });
    cfg.schedule_given = true;
  }
  if (has("power")) cfg.schedule.power = num("power");
  if (has("p")) cfg.p = parse_p(str("p"), "--p");
  if (has("method")) cfg.method = wrap([&] { return parse_method(str("method")); });
  if (has("quantity")) cfg.quantity = wrap([&] { return parse_quantity(str("quantity")); });
  if (has("trials")) cfg.trials = integer("trials");
  if (has("seed")) cfg.seed = parse_number<std::uint64_t>(str("seed"), "--seed");
  cfg.workers = default_workers();
  if (has("workers")) cfg.workers = static_cast<int>(integer("workers"));
  if (has("out")) cfg.out = str("out");
  if (has("name")) cfg.name = wrap([&] { return parse_rate_name(str("name")); });
  if (has("grid")) cfg.grid = parse_grid(str("grid"));
  if (has("interval")) {
    const auto parts = split(str("interval"), ':');
    if (parts.size() != 2) throw UsageError("--interval must be a:b");
    Interval iv;
    iv.a = parse_number<double>(parts[0], "--interval");
    iv.b = (parts[1] == "inf") ? kInfinity : ExtendedReal(parse_number<double>(parts[1], "--interval"));
    wrap([&] {
      iv.validate();
      return 0;
    });
    cfg.interval = iv;
  }
  if (has("n_schedule")) {
    for (const auto& part : split(str("n_schedule"), ',')) cfg.n_schedule.push_back(parse_number<std::int64_t>(part, "--n-schedule"));
  }
  cfg.exact = flags[prefix + "exact"];
  if (has("tolerance")) cfg.tolerance = num("tolerance");
  if (has("level")) cfg.level = num("level");
  if (has("alpha")) cfg.alpha = num("alpha");
  if (has("what")) cfg.what = str("what");
  if (has("a1")) cfg.a1 = num("a1");
  if (has("a2")) cfg.a2 = num("a2");
  if (has("t1")) cfg.t1 = num("t1");
  if (has("t2")) cfg.t2 = num("t2");
  if (has("t")) cfg.t = num("t");
  if (has("p_list")) {
    for (const auto& part : split(str("p_list"), ',')) cfg.p_list.push_back(parse_p(part, "--p-list"));
  }
  if (has("t_grid")) {
    const auto parts = split(str("t_grid"), ':');
    if (parts.size() != 3) throw UsageError("--t-grid must be lo:hi:count");
    cfg.t_grid = wrap([&] {
      return log_grid(parse_number<double>(parts[0], "--t-grid"), parse_number<double>(parts[1], "--t-grid"),
                             parse_number<int>(parts[2], "--t-grid"));
    });
  }
  if (has("gaussian")) {
    for (const auto& part : split(str("gaussian"), ',')) {
      const auto kt = split(part, ':');
      if (kt.size() != 2) throw UsageError("--gaussian entries must be k:t");
      cfg.gaussian_points.emplace_back(parse_number<int>(kt[0], "--gaussian"), parse_number<double>(kt[1], "--gaussian"));
    }
  }

  if (cfg.trials < 1) throw UsageError("--trials must be >= 1");
  if (cfg.workers < 1) throw UsageError("--workers must be >= 1");
  if (!(cfg.level > 0.0 && cfg.level < 1.0)) throw UsageError("--level must lie in (0, 1)");
  if (!(cfg.tolerance > 0.0)) throw UsageError("--tolerance must be positive");

  auto require_regime = [&] {
    require("n");
    require("p");
    if (*cfg.n < 2) throw UsageError("--n must be >= 2");
    if (!cfg.k && !cfg.schedule_given) throw UsageError("give --k or --lambda/--rule");
    cfg.k_for(*cfg.n);
  };
  switch (cfg.command) {
    case Command::kSample:
      require_regime();
      require("out");
      break;
    case Command::kRate: {
      require("name");
      require("grid");
      RateQuery q{*cfg.name, cfg.p, cfg.lambda, 0.0};
      wrap([&] {
        q.validate();
        return 0;
      });
      break;
    }
    case Command::kVerifyLdp:
      require("name");
      require("interval");
      require("n_schedule");
      if (!cfg.lambda) throw UsageError("--lambda is required for verify-ldp");
      if (cfg.k) {
        cfg.schedule.rule = ScheduleRule::kConstant;
        cfg.schedule.constant_k = *cfg.k;
      }
      for (auto n : cfg.n_schedule) {
        if (n < 2) throw UsageError("--n-schedule entries must be >= 2");
      }
      break;
    case Command::kVerifyRepresentation:
      require_regime();
      if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
      break;
    case Command::kOracle:
      require("what");
      break;
    case Command::kCheckBounds:
      if (cfg.p_list.empty()) cfg.p_list = {PExponent(1.0), PExponent(1.5)};
      if (cfg.t_grid.empty()) cfg.t_grid = log_grid(1.0, 1000.0, 31);
      if (cfg.gaussian_points.empty()) cfg.gaussian_points = {{1, 1.0}, {3, 3.0}, {5, std::sqrt(8.0)}, {10, 5.0}};
      break;
  }
  return cfg;
}

}  // namespace lpproj::cli
