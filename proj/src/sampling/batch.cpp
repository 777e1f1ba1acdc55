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

#include "lpproj/sampling/batch.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "lpproj/extended_real.hpp"

namespace lpproj {

int default_workers() {
  if (const char* env = std::getenv("LPPROJ_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

DrawEngines chunk_engines(std::uint64_t seed, std::int64_t chunk, Quantity quantity, Method method) {
  const std::uint64_t tag = (static_cast<std::uint64_t>(quantity) << 8) | static_cast<std::uint64_t>(method);
  const RngStream stream = RngStream{seed, static_cast<std::uint64_t>(chunk)}.substream(tag);
  return DrawEngines::from(stream);
}

SampleBatch generate_batch(const BatchRequest& request) {
  if (request.count < 1) throw std::invalid_argument("generate_batch: count must be >= 1");
  SampleBatch batch;
  batch.n = request.n;
  batch.k = request.k;
  batch.p = request.p;
  batch.method = request.method;
  batch.quantity = request.quantity;
  batch.seed = request.seed;
  batch.values.resize(static_cast<std::size_t>(request.count));
  parallel_chunks(request.count, request.workers, [&](std::int64_t chunk, std::int64_t begin, std::int64_t end) {
    DrawEngines engines = chunk_engines(request.seed, chunk, request.quantity, request.method);
    for (std::int64_t i = begin; i < end; ++i) {
      batch.values[static_cast<std::size_t>(i)] =
          sample_quantity(request.quantity, request.n, request.k, request.p, request.method, engines);
    }
  });
  return batch;
}

std::string sample_batch_csv(const SampleBatch& batch) {
  std::string out = "value\n";
  out.reserve(out.size() + batch.values.size() * 24);
  for (double v : batch.values) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

namespace {

nlohmann::json p_json(const PExponent& p) {
  if (p.is_infinite()) return "inf";
  return p.value();
}

}  // namespace

std::string sample_batch_metadata_json(const SampleBatch& batch) {
  nlohmann::ordered_json j;
  j["n"] = batch.n;
  j["k"] = batch.k;
  j["p"] = p_json(batch.p);
  j["method"] = std::string(to_string(batch.method));
  j["quantity"] = std::string(to_string(batch.quantity));
  j["seed"] = batch.seed;
  j["count"] = batch.values.size();
  return j.dump(2) + "\n";
}

std::size_t validate_sample_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "value") throw std::runtime_error("sample csv: missing `value` header");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::size_t used = 0;
    try {
      std::stod(line, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != line.size()) {
      throw std::runtime_error("sample csv: row " + std::to_string(rows + 1) + " is not a number");
    }
    ++rows;
  }
  if (rows == 0) throw std::runtime_error("sample csv: no rows");
  return rows;
}

void validate_sample_metadata_json(const std::string& json, std::size_t expected_count) {
  const auto j = nlohmann::json::parse(json);
  for (const char* key : {"n", "k", "p", "method", "quantity", "seed", "count"}) {
    if (!j.contains(key)) throw std::runtime_error(std::string("sample metadata: missing key ") + key);
  }
  if (j.size() != 7) throw std::runtime_error("sample metadata: unexpected keys");
  if (!j["n"].is_number_integer() || !j["k"].is_number_integer() || !j["seed"].is_number_integer()) {
    throw std::runtime_error("sample metadata: n, k, seed must be integers");
  }
  if (!(j["p"].is_number() || j["p"] == "inf")) throw std::runtime_error("sample metadata: bad p");
  parse_method(j["method"].get<std::string>());
  parse_quantity(j["quantity"].get<std::string>());
  if (j["count"].get<std::size_t>() != expected_count) throw std::runtime_error("sample metadata: count mismatch");
}

}  // namespace lpproj
