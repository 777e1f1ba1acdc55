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

#include "lpproj/cli/execute.hpp"

#include <ostream>

#include "json.hpp"
#include "lpproj/cli/atomic_file.hpp"
#include "lpproj/numerics/errors.hpp"
#include "lpproj/rates/cgf.hpp"
#include "lpproj/sampling/batch.hpp"
#include "lpproj/verify/brackets.hpp"
#include "lpproj/verify/ks.hpp"
#include "lpproj/verify/ldp.hpp"
#include "lpproj/verify/oracles.hpp"

namespace lpproj::cli {

namespace {

using ojson = nlohmann::ordered_json;

ojson extended_json(const ExtendedReal& v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

ojson p_json(const PExponent& p) {
  if (p.is_infinite()) return "inf";
  return p.value();
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& body) {
  if (cfg.out.empty()) {
    out << body;
  } else {
    write_file_atomic(cfg.out, body);
  }
}

int run_sample(const RunConfig& cfg) {
  BatchRequest req;
  req.quantity = cfg.quantity;
  req.n = *cfg.n;
  req.k = cfg.k_for(*cfg.n);
  req.p = *cfg.p;
  req.method = cfg.method;
  req.count = cfg.trials;
  req.seed = cfg.seed;
  req.workers = cfg.workers;
  const SampleBatch batch = generate_batch(req);
  write_files_atomic({{cfg.out, sample_batch_csv(batch)}, {cfg.out + ".json", sample_batch_metadata_json(batch)}});
  return kExitOk;
}

int run_rate(const RunConfig& cfg, std::ostream& out) {
  const RateCurve curve = evaluate_curve(*cfg.name, cfg.p, cfg.lambda, cfg.grid, cfg.workers);
  if (cfg.out.empty()) {
    out << rate_curve_csv(curve);
  } else {
    write_files_atomic({{cfg.out, rate_curve_csv(curve)}, {cfg.out + ".json", rate_curve_metadata_json(curve)}});
  }
  return kExitOk;
}

int run_verify_ldp(const RunConfig& cfg, std::ostream& out) {
  LdpConfig lc;
  lc.rate = *cfg.name;
  lc.p = cfg.p;
  lc.lambda = cfg.lambda.value_or(cfg.schedule.limit_lambda());
  lc.schedule = cfg.schedule;
  lc.interval = *cfg.interval;
  lc.n_schedule = cfg.n_schedule;
  lc.trials = cfg.trials;
  lc.seed = cfg.seed;
  lc.workers = cfg.workers;
  lc.use_exact_oracle = cfg.exact;
  lc.tolerance = cfg.tolerance;
  lc.level = cfg.level;
  lc.method = cfg.method;
  const LdpReport report = run_ldp_convergence(lc);
  emit(cfg, out, ldp_report_json(report));
  return report.verdict ? kExitOk : kExitVerdictFailed;
}

int run_verify_representation(const RunConfig& cfg, std::ostream& out) {
  BatchRequest req;
  req.n = *cfg.n;
  req.k = cfg.k_for(*cfg.n);
  req.p = *cfg.p;
  req.count = cfg.trials;
  req.seed = cfg.seed;
  req.workers = cfg.workers;
  req.method = Method::kDirect;
  const SampleBatch direct = generate_batch(req);
  req.method = Method::kProduct;
  const SampleBatch product = generate_batch(req);
  const KsResult ks = ks_two_sample(direct.values, product.values);
  const bool pass = ks.p_value > cfg.alpha;
  ojson j;
  j["n"] = req.n;
  j["k"] = req.k;
  j["p"] = p_json(req.p);
  j["trials"] = req.count;
  j["seed"] = req.seed;
  j["statistic"] = ks.statistic;
  j["p_value"] = ks.p_value;
  j["n1"] = ks.n1;
  j["n2"] = ks.n2;
  j["alpha"] = cfg.alpha;
  j["verdict"] = pass;
  emit(cfg, out, j.dump(2) + "\n");
  return pass ? kExitOk : kExitVerdictFailed;
}

int run_oracle(const RunConfig& cfg, std::ostream& out) {
  ojson j;
  auto need_p = [&] {
    if (!cfg.p) throw UsageError("--p is required for oracle " + cfg.what);
    return *cfg.p;
  };
  auto need_nk = [&] {
    if (!cfg.n || !cfg.k) throw UsageError("--n and --k are required for oracle " + cfg.what);
  };
  if (cfg.what == "m_p") {
    const PExponent p = need_p();
    if (p.is_infinite()) throw UsageError("oracle m_p needs a finite p");
    const MomentReport r = moment_m_report(p);
    j["m"] = r.m;
    j["candidate_pp2"] = r.candidate_pp2;
    j["candidate_p2p"] = r.candidate_p2p;
  } else if (cfg.what == "exact_V") {
    need_nk();
    j["probability"] = exact_V_interval_probability(*cfg.n, *cfg.k, cfg.a1, cfg.a2);
  } else if (cfg.what == "exact_V1") {
    need_nk();
    j["probability"] = exact_V1_interval_probability(*cfg.n, *cfg.k, cfg.a1, cfg.a2);
  } else if (cfg.what == "cgf_pair") {
    const PExponent p = need_p();
    if (p.is_infinite() || p.value() < 2.0) throw UsageError("oracle cgf_pair needs 2 <= p < inf");
    const Cgf2DJet jet = cgf_pair_jet(p.value(), cfg.t1, cfg.t2);
    j["value"] = extended_json(jet.value);
    if (jet.value.is_finite()) {
      j["gradient"] = {jet.gradient(0), jet.gradient(1)};
      j["hessian"] = {{jet.hessian(0, 0), jet.hessian(0, 1)}, {jet.hessian(1, 0), jet.hessian(1, 1)}};
    }
  } else if (cfg.what == "cgf_infty") {
    j["value"] = cgf_infty(cfg.t);
  } else {
    throw UsageError("unknown oracle '" + cfg.what + "' (m_p, exact_V, exact_V1, cgf_pair, cgf_infty)");
  }
  emit(cfg, out, j.dump(2) + "\n");
  return kExitOk;
}

int run_check_bounds(const RunConfig& cfg, std::ostream& out) {
  std::vector<BracketReport> reports;
  for (const auto& p : cfg.p_list) reports.push_back(check_tail_bracket(p, cfg.t_grid));
  reports.push_back(check_gaussian_tail_bracket(cfg.gaussian_points));
  emit(cfg, out, bracket_report_json(reports));
  for (const auto& r : reports) {
    if (!r.all_inside) return kExitVerdictFailed;
  }
  return kExitOk;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int execute(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::kSample:
      return run_sample(cfg);
    case Command::kRate:
      return run_rate(cfg, out);
    case Command::kVerifyLdp:
      return run_verify_ldp(cfg, out);
    case Command::kVerifyRepresentation:
      return run_verify_representation(cfg, out);
    case Command::kOracle:
      return run_oracle(cfg, out);
    case Command::kCheckBounds:
      return run_check_bounds(cfg, out);
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_config(argc, argv);
    if (!cfg) return kExitOk;
    return execute(*cfg, out);
  } catch (const UsageError& e) {
    err << "error: usage: " << one_line(e.what()) << "\n";
    return kExitUsage;
  } catch (const UnsupportedRegimeError& e) {
    err << "error: unsupported_regime: " << one_line(e.what()) << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: usage: " << one_line(e.what()) << "\n";
    return kExitUsage;
  } catch (const NonConvergenceError& e) {
    err << "error: nonconvergence: " << one_line(e.what()) << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: io: " << one_line(e.what()) << "\n";
    return kExitIo;
  }
}

}  // namespace lpproj::cli
