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

#ifndef LPPROJ_SAMPLING_BATCH_HPP_
#define LPPROJ_SAMPLING_BATCH_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "lpproj/sampling/samplers.hpp"
#include "lpproj/sampling/types.hpp"

namespace lpproj {

/// Draws per chunk. Chunk c always uses stream index c, so results do not
/// depend on the number of workers.
inline constexpr std::int64_t kChunkSize = 4096;

/// Worker count from LPPROJ_WORKERS, else the hardware concurrency.
int default_workers();

/// Calls fn(chunk, begin, end) for every chunk of [0, count) on up to
/// `workers` threads. fn must only touch state owned by its chunk.
/// The first exception thrown by any chunk is rethrown after all threads
/// have joined.
template <class ChunkFn>
void parallel_chunks(std::int64_t count, int workers, ChunkFn&& fn) {
  const std::int64_t chunks = (count + kChunkSize - 1) / kChunkSize;
  const int threads = static_cast<int>(std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(chunks, 1)));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    while (true) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        fn(c, c * kChunkSize, std::min(count, (c + 1) * kChunkSize));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
      }
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

/// Engines for one chunk of a batch. The method is folded into the
/// substream tags so direct and product batches with the same seed are
/// independent of each other.
DrawEngines chunk_engines(std::uint64_t seed, std::int64_t chunk, Quantity quantity, Method method);

struct BatchRequest {
  Quantity quantity = Quantity::kScaledNorm;
  std::int64_t n = 2;
  std::int64_t k = 1;
  PExponent p = PExponent(2.0);
  Method method = Method::kProduct;
  std::int64_t count = 1;
  std::uint64_t seed = 0;
  int workers = 1;
};

/// `count` realizations, concatenated in chunk order.
SampleBatch generate_batch(const BatchRequest& request);

/// CSV body: header `value`, one number per line.
std::string sample_batch_csv(const SampleBatch& batch);
/// Sidecar metadata {n, k, p, method, quantity, seed, count}.
std::string sample_batch_metadata_json(const SampleBatch& batch);

/// Schema checks used on read-back; throw std::runtime_error describing the
/// first violation. validate_sample_csv returns the number of data rows.
std::size_t validate_sample_csv(const std::string& csv);
void validate_sample_metadata_json(const std::string& json, std::size_t expected_count);

}  // namespace lpproj

#endif  // LPPROJ_SAMPLING_BATCH_HPP_
