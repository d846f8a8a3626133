// include/tandem/rng.hpp

// Copyright 2026  Tandem Toolkit Authors

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

#ifndef TANDEM_RNG_HPP_
#define TANDEM_RNG_HPP_

#include <cstdint>
#include <random>

#include "tandem/common.hpp"

namespace tandem {

/// Deterministic random stream.  std::mt19937_64 output is pinned by the
/// standard, but the std distributions are not, so the mappings to
/// doubles and bounded ints live here; two builds with the same seed
/// produce identical draws on any platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double NextUnit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * NextUnit(); }

  /// Uniform integer in [0, n).  The modulo bias at n << 2^64 is far below
  /// anything observable here.
  size_t UniformIndex(size_t n) {
    Require(n > 0, "rng: empty range");
    return static_cast<size_t>(engine_() % n);
  }

  /// Standard normal via Box-Muller (pinned algorithm, unlike
  /// std::normal_distribution).
  double NextGaussian() {
    double u1 = NextUnit(), u2 = NextUnit();
    while (u1 <= 0.0) u1 = NextUnit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::mt19937_64 engine_;
};

/// Mixes a master seed with a string tag (e.g. a trial id) into a
/// substream seed.  FNV over the tag, then splitmix-style finalization.
inline uint64_t DeriveSeed(uint64_t master, const std::string &tag,
                           uint64_t salt = 0) {
  uint64_t h = Fnv1a(tag);
  h ^= master + 0x9e3779b97f4a7c15ull + (salt << 1);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ull;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebull;
  h ^= h >> 31;
  return h;
}

}  // namespace tandem

#endif  // TANDEM_RNG_HPP_
