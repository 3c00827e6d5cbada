// Copyright 2026 The Propforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROPFORGE_COMMON_RANDOM_H_
#define PROPFORGE_COMMON_RANDOM_H_

#include <cstdint>
#include <random>

namespace propforge {

// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t MixSeed(std::uint64_t seed);
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

// Portable RNG: mt19937_64 is fully specified by the standard, and the
// conversions below avoid the implementation-defined std distributions, so a
// seed yields the same sequence with every toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Standard normal via Box-Muller (one value per call, no caching).
  double Normal();
  // Uniform integer in [0, n).
  std::uint64_t Below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace propforge

#endif  // PROPFORGE_COMMON_RANDOM_H_
