// Copyright 2026 The noisy-discrimination Authors
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


#ifndef NOISY_DISCRIMINATION_ORACLE_RNG_HPP_
#define NOISY_DISCRIMINATION_ORACLE_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>

namespace noisy_discrimination {

/// SplitMix64 step; used only to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seedable, splittable generator: std::mt19937_64 streams keyed by
/// (seed, stream) through SplitMix64. Uniform and normal variates are
/// computed here rather than by <random> distributions, whose output is
/// implementation-defined, so draws are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), engine_(derive(seed, stream)) {}

  /// Independent generator for sub-stream `stream` of the same seed.
  Rng split(std::uint64_t stream) const { return Rng(seed_, stream + 1); }

  std::uint64_t seed() const { return seed_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; the second variate is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = uniform();
    while (u <= 0.0) u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double angle = 2.0 * std::numbers::pi * v;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

  /// Index drawn with probability proportional to `weights` (nonnegative,
  /// not all zero). Zero-weight entries are never returned.
  std::size_t categorical(std::span<const double> weights) {
    double total = 0.0;
    for (const double w : weights) total += w;
    const double target = uniform() * total;
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (weights[k] <= 0.0) continue;
      cumulative += weights[k];
      last_positive = k;
      if (target < cumulative) return k;
    }
    return last_positive;
  }

 private:
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed;
    std::uint64_t key = splitmix64(state);
    state = key ^ (stream * 0xD1B54A32D192ED03ULL);
    return splitmix64(state);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace noisy_discrimination

#endif  // NOISY_DISCRIMINATION_ORACLE_RNG_HPP_
