//
// Copyright 2026 The SmoothCert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SMOOTHCERT_RANDOM_HPP_
#define SMOOTHCERT_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace smoothcert {

namespace internal {

constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace internal

// A reproducible source of variates identified by (seed, stream_id). Two
// streams constructed with the same pair produce the same sequence. Streams
// are not thread-safe; give every worker its own via substream().
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Derives an independent child stream. Children of distinct indices (and
  // of distinct parents) have distinct stream ids with overwhelming odds.
  RandomStream substream(std::uint64_t index) const {
    return RandomStream(seed_, internal::SplitMix64(stream_id_ ^ internal::SplitMix64(index + 1)));
  }

  // Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() { return normal_(engine_); }

  // Standard exponential, rate 1.
  double exponential() { return -std::log(uniform()); }

  // +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

}  // namespace smoothcert

#endif  // SMOOTHCERT_RANDOM_HPP_
