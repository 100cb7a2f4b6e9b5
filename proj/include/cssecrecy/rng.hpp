// Copyright 2026 The cs-secrecy Authors.
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

#ifndef CSSECRECY_RNG_HPP_
#define CSSECRECY_RNG_HPP_

// Seeded generator pipeline used to derive measurement matrices:
//   SplitMix64(seed) -> 4-word xoshiro256++ state -> 53-bit uniforms ->
//   Box-Muller normals.
// The pipeline is a reproducibility contract so that sender and receiver
// derive the same matrix. It is NOT a cryptographically strong generator.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>

namespace cssecrecy {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256++ 1.0. Satisfies UniformRandomBitGenerator.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256pp(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) from the top 53 bits.
  constexpr double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

// Standard normals via Box-Muller. Each pair of uniforms (u1, u2) yields
// r*cos(theta) first and r*sin(theta) second; nothing is cached beyond the
// pending second value of the current pair.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) noexcept : gen_(seed) {}

  double next() noexcept {
    if (has_pending_) {
      has_pending_ = false;
      return pending_;
    }
    auto [first, second] = next_pair();
    pending_ = second;
    has_pending_ = true;
    return first;
  }

  std::pair<double, double> next_pair() noexcept {
    const double u1 = gen_.uniform();
    const double u2 = gen_.uniform();
    // 1 - u1 lies in (0, 1], keeping the log finite.
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  Xoshiro256pp gen_;
  double pending_ = 0.0;
  bool has_pending_ = false;
};

}  // namespace cssecrecy

#endif  // CSSECRECY_RNG_HPP_
