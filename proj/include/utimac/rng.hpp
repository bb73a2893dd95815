// utimac/rng.hpp
//
// Counter-based 64-bit generator. The i-th output is a pure function of
// (key, i): out_i = mix(key + i * GAMMA) with the SplitMix64 finalizer,
// GAMMA = 0x9E3779B97F4A7C15. Streams are decorrelated by hashing a
// stream id into the key. This keeps every sampled artifact reproducible
// from the seed alone, independent of call interleaving or platform
// libm differences in the integer path.

// Copyright 2026 The Utimac Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UTIMAC_RNG_HPP
#define UTIMAC_RNG_HPP

#include <cmath>
#include <cstdint>

namespace utimac {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// key for sub-stream `stream` of the generator seeded with `key`.
inline std::uint64_t derive_stream(std::uint64_t key, std::uint64_t stream) {
  return mix64(key ^ mix64(stream + 0x9E3779B97F4A7C15ull));
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() {
    counter_ += 1;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ull);
  }

  /// Uniform on the open interval (0, 1): ((u >> 11) + 0.5) * 2^-53.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (one value per call).
  double next_normal() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  /// Laplace(0, b) via the inverse CDF: -b * sgn(u) * ln(1 - 2|u|),
  /// u uniform on (-1/2, 1/2).
  double next_laplace(double b) {
    const double u = next_unit() - 0.5;
    const double s = u < 0.0 ? -1.0 : 1.0;
    return -b * s * std::log(1.0 - 2.0 * std::fabs(u));
  }

  bool next_bernoulli(double p) { return next_unit() < p; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace utimac

#endif  // UTIMAC_RNG_HPP
