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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "lpproj/cli/atomic_file.hpp"
#include "lpproj/cli/config.hpp"
#include "lpproj/cli/execute.hpp"
#include "lpproj/rates/rates.hpp"
#include "lpproj/sampling/batch.hpp"
#include "lpproj/verify/brackets.hpp"

using namespace lpproj;
using namespace lpproj::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "lpproj");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::optional<RunConfig> parse(std::vector<std::string> args) {
  args.insert(args.begin(), "lpproj");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_config(static_cast<int>(argv.size()), argv.data());
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lpproj_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parse sample flags") {
  const auto cfg = parse({"sample", "--n", "50", "--k", "10", "--p", "1.5", "--method", "product", "--trials",
                          "100000", "--seed", "7", "--out", "s.csv"});
  REQUIRE(cfg);
  CHECK(cfg->command == Command::kSample);
  CHECK(*cfg->n == 50);
  CHECK(cfg->k_for(50) == 10);
  CHECK(cfg->p->value() == 1.5);
  CHECK(cfg->method == Method::kProduct);
  CHECK(cfg->trials == 100000);
  CHECK(cfg->seed == 7);
  CHECK(cfg->out == "s.csv");
}

TEST_CASE("parse rate grid") {
  const auto cfg = parse({"rate", "--name", "rate_projection", "--p", "2", "--lambda", "0.5", "--grid", "0.01:0.99:99",
                          "--out", "r.csv"});
  REQUIRE(cfg);
  CHECK(cfg->grid.size() == 99);
  CHECK(cfg->grid.front() == 0.01);
  CHECK(cfg->grid.back() == 0.99);
  CHECK(*cfg->name == RateName::kRateProjection);
  CHECK_THROWS_AS(parse_grid("1:0:5"), UsageError);
  CHECK_THROWS_AS(parse_grid("0:1"), UsageError);
}

TEST_CASE("usage errors") {
  const Outcome small_p = invoke({"sample", "--n", "5", "--p", "0.5"});
  CHECK(small_p.code == kExitUsage);
  CHECK(small_p.err.find("p must be >= 1 or \"inf\"") != std::string::npos);
  CHECK(small_p.err.rfind("error: ", 0) == 0);
  CHECK(std::count(small_p.err.begin(), small_p.err.end(), '\n') == 1);

  const Outcome unknown = invoke({"sample", "--n", "5", "--bogus", "1"});
  CHECK(unknown.code == kExitUsage);
  CHECK(unknown.err.find("bogus") != std::string::npos);

  CHECK(invoke({"frobnicate"}).code == kExitUsage);
  CHECK(invoke({"rate", "--name", "rate_W", "--grid", "0:1:3"}).code == kExitUsage);
  CHECK(invoke({"oracle", "--what", "nothing"}).code == kExitUsage);
  CHECK(invoke({"rate", "--name", "rate_projection", "--p", "1.5", "--lambda", "0", "--grid", "0.5:1:3"}).code ==
        kExitUsage);
}

TEST_CASE("JSON config with flag overrides") {
  const fs::path dir = scratch_dir("config");
  const fs::path cfg_path = dir / "c.json";
  std::ofstream(cfg_path) << R"({"n": 40, "k": 4, "p": "inf", "trials": 10, "seed": 3})";
  const auto cfg = parse({"sample", "--config", cfg_path.string(), "--seed", "9", "--out", "x.csv"});
  REQUIRE(cfg);
  CHECK(*cfg->n == 40);
  CHECK(cfg->p->is_infinite());
  CHECK(cfg->seed == 9);

  std::ofstream(cfg_path) << R"({"n": 40, "colour": "red"})";
  const Outcome bad = invoke({"sample", "--config", cfg_path.string(), "--out", "x.csv"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("colour") != std::string::npos);
}

TEST_CASE("sample writes a validated CSV and sidecar deterministically") {
  const fs::path dir = scratch_dir("sample");
  const std::string a = (dir / "a.csv").string();
  const std::string b = (dir / "b.csv").string();
  CHECK(invoke({"sample", "--n", "30", "--k", "7", "--p", "3", "--trials", "9000", "--seed", "5", "--workers", "1",
                "--out", a})
            .code == kExitOk);
  CHECK(invoke({"sample", "--n", "30", "--k", "7", "--p", "3", "--trials", "9000", "--seed", "5", "--workers", "3",
                "--out", b})
            .code == kExitOk);
  CHECK(read_file(a) == read_file(b));
  CHECK(validate_sample_csv(read_file(a)) == 9000);
  validate_sample_metadata_json(read_file(a + ".json"), 9000);
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().string().find(".tmp") == std::string::npos);
}

TEST_CASE("rate command") {
  const Outcome w = invoke({"rate", "--name", "rate_W", "--p", "2", "--grid", "0.5:1.5:11"});
  CHECK(w.code == kExitOk);
  CHECK(w.out.find("\n1,0\n") != std::string::npos);
  CHECK(std::count(w.out.begin(), w.out.end(), 'i') == 10);

  const fs::path dir = scratch_dir("rate");
  const std::string path = (dir / "r.csv").string();
  CHECK(invoke({"rate", "--name", "rate_projection", "--p", "2", "--lambda", "0.5", "--grid", "0.01:0.99:99", "--out",
                path})
            .code == kExitOk);
  CHECK(validate_rate_curve_csv(read_file(path)) == 99);
  validate_rate_curve_metadata_json(read_file(path + ".json"));
  const auto meta = nlohmann::json::parse(read_file(path + ".json"));
  CHECK(meta["name"] == "rate_projection");
  CHECK(meta["speed"]["kind"] == "n");
}

TEST_CASE("oracle command") {
  const Outcome m = invoke({"oracle", "--what", "m_p", "--p", "2"});
  REQUIRE(m.code == kExitOk);
  const auto j = nlohmann::json::parse(m.out);
  CHECK(j["m"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["candidate_pp2"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["candidate_p2p"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

  const auto v = nlohmann::json::parse(invoke({"oracle", "--what", "exact_V", "--n", "4", "--k", "2", "--a1", "0",
                                               "--a2", "0.7"})
                                           .out);
  CHECK(v["probability"].get<double>() == doctest::Approx(0.49));
  const auto inf = nlohmann::json::parse(invoke({"oracle", "--what", "cgf_pair", "--p", "3", "--t1", "0.2", "--t2",
                                                 "0.5"})
                                             .out);
  CHECK(inf["value"] == "inf");
}

TEST_CASE("verify-representation and check-bounds verdicts") {
  const Outcome ks = invoke({"verify-representation", "--n", "20", "--k", "5", "--p", "1.5", "--trials", "20000"});
  CHECK(ks.code == kExitOk);
  CHECK(nlohmann::json::parse(ks.out)["p_value"].get<double>() > 0.001);

  const Outcome good = invoke({"check-bounds", "--p-list", "1", "--t-grid", "1:1000:11"});
  CHECK(good.code == kExitOk);
  validate_bracket_report_json(good.out);
  const Outcome bad = invoke({"check-bounds", "--p-list", "1.5", "--t-grid", "1:1000:11"});
  CHECK(bad.code == kExitVerdictFailed);
}

TEST_CASE("verify-ldp with the exact oracle") {
  const Outcome r = invoke({"verify-ldp", "--name", "rate_V", "--lambda", "0.3", "--interval", "0.8:1", "--n-schedule",
                            "100,1000,10000", "--exact"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == true);
  CHECK(j["rows"].size() == 3);
}

TEST_CASE("atomic writes leave no temp files") {
  const fs::path dir = scratch_dir("atomic");
  const std::string path = (dir / "f.txt").string();
  write_file_atomic(path, "one");
  write_file_atomic(path, "two");
  CHECK(read_file(path) == "two");
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator()) == 1);
  CHECK_THROWS(write_file_atomic((dir / "missing" / "f.txt").string(), "x"));
  CHECK(invoke({"sample", "--n", "5", "--k", "2", "--p", "2", "--trials", "3", "--out",
                (dir / "missing" / "s.csv").string()})
            .code == kExitIo);
}
