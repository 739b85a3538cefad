// Copyright 2026 The seeds-mdp Authors.
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

#pragma once

#include <cstdint>
#include <limits>
#include <span>

namespace seeds {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/**
 * Reproducible random stream keyed by (seed, stream_id).
 *
 * The generator is SplitMix64 started from a state derived from both keys,
 * so independent streams can be handed to each replication, episode or
 * component without any shared state. Identical keys give identical draw
 * sequences. Satisfies UniformRandomBitGenerator, so it can drive the
 * standard distributions.
 */
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
      : seed_(seed),
        stream_id_(stream_id),
        state_(mix64(seed + 0x9e3779b97f4a7c15ull) ^
               mix64(stream_id ^ 0xd1b54a32d192ed03ull)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Index drawn with probability proportional to `weights`. Falls back to
  /// uniform when all weights are zero.
  std::size_t categorical(std::span<const double> weights) noexcept;

  /// Child stream; depends only on this stream's keys, not on its position.
  RngStream substream(std::uint64_t id) const noexcept {
    return RngStream(mix64(seed_ ^ mix64(stream_id_ + 0x632be59bd9b4e019ull)),
                     id);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
};

inline std::size_t RngStream::categorical(
    std::span<const double> weights) noexcept {
  double total = 0.0;
  for (double w : weights) total += w;
  if (weights.empty()) return 0;
  if (!(total > 0.0)) {
    auto k = static_cast<std::size_t>(uniform() * weights.size());
    return k < weights.size() ? k : weights.size() - 1;
  }
  const double target = uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (target < acc) return i;
  }
  return last_positive;
}

}  // namespace seeds
