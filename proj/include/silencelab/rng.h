// include/silencelab/rng.h

// Copyright 2026  SilenceLab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SILENCELAB_RNG_H_
#define SILENCELAB_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace silencelab {

// Deterministic randomness helpers.
//
// std::mt19937_64's raw output sequence is pinned by the standard, but the
// <random> distribution classes are not, so seeded runs would stop being
// byte-identical across standard libraries. The few draw types needed here
// are implemented directly on the raw 64-bit stream instead.

inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline uint64_t Fnv1a64(std::string_view s) {
  uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

// Stream seed for one utterance. Mixing the utterance id in makes the draws
// independent of corpus order and of how records are sharded over workers:
//   seed_u = splitmix64(fnv1a64(utt_id) ^ (base_seed * 0x9E3779B97F4A7C15))
inline uint64_t DeriveSeed(uint64_t base_seed, std::string_view utt_id) {
  return SplitMix64(Fnv1a64(utt_id) ^ (base_seed * 0x9E3779B97F4A7C15ull));
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t NextU64() { return gen_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double Uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  // Uniform on {0, ..., n - 1}. Rejection keeps it exactly uniform.
  uint64_t UniformBelow(uint64_t n) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  // Box-Muller, spare value cached. Two raw draws per generated pair.
  double Gaussian(double mean, double stddev) {
    if (have_spare_) {
      have_spare_ = false;
      return mean + stddev * spare_;
    }
    double u1 = 1.0 - Uniform01();  // (0, 1]; log stays finite
    double u2 = Uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return mean + stddev * r * std::cos(theta);
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace silencelab

#endif  // SILENCELAB_RNG_H_
