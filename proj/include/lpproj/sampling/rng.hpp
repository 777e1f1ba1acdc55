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

#ifndef LPPROJ_SAMPLING_RNG_HPP_
#define LPPROJ_SAMPLING_RNG_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace lpproj {

/// Philox4x32-10 counter-based generator exposed as a 64-bit
/// UniformRandomBitGenerator. The 64-bit key selects a family, the upper
/// half of the 128-bit counter selects a stream, the lower half is the
/// position within the stream.
class Philox4x32 {
 public:
  using result_type = std::uint64_t;

  Philox4x32(std::uint64_t key, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in (0, 1); never returns 0 or 1.
  double uniform_open();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int consumed_ = 4;
};

/// (seed, stream_index) names a reproducible stream; distinct stream
/// indices give independent streams. substream(j) derives further
/// independent streams for the separate factors of one draw.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
  std::uint64_t substream_tag = 0;

  RngStream substream(std::uint64_t j) const;
  Philox4x32 engine() const;
};

/// SplitMix64 finalizer, used to derive keys.
std::uint64_t mix64(std::uint64_t x);

}  // namespace lpproj

#endif  // LPPROJ_SAMPLING_RNG_HPP_
