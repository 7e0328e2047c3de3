// Copyright 2026 The splitsamp Authors
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

#ifndef SPLITSAMP_RNG_H_
#define SPLITSAMP_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>

namespace splitsamp {

// SplitMix64 finalizer (Steele, Lea & Flood). Constants:
//   increment  0x9E3779B97F4A7C15
//   multiply   0xBF58476D1CE4E5B9, 0x94D049BB133111EB
//   shifts     30, 27, 31
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed for replicate `index` of a run started from `base`. Two rounds of
// mixing so that neighbouring bases do not produce overlapping streams.
constexpr std::uint64_t derive_seed(std::uint64_t base,
                                    std::uint64_t index) noexcept {
  return splitmix64(splitmix64(base) ^ (index * 0xD1B54A32D192ED03ULL));
}

// Uniform stream used by every sampler. mt19937_64 is fully specified by
// the standard, and the conversions below avoid the implementation-defined
// std::*_distribution classes, so streams are reproducible across builds.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double operator()() noexcept { return uniform(); }

  // Exp(1) by inverse CDF.
  double exponential() noexcept { return -std::log1p(-uniform()); }

  // N(0,1) by the Marsaglia polar form of Box-Muller; the second variate of
  // each accepted pair is cached.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0, v = 0.0, s = 0.0;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
  }

  std::uint64_t next_u64() noexcept { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace splitsamp

#endif  // SPLITSAMP_RNG_H_
