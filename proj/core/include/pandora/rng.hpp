// Copyright 2026 The Authors.
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

#ifndef PANDORA_RNG_HPP_
#define PANDORA_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

namespace pandora {

// One SplitMix64 step: add the golden-ratio increment, then mix.
std::uint64_t splitmix64(std::uint64_t x);

// Seed of stream `stream` under `master_seed`:
//   splitmix64(splitmix64(master_seed) ^ splitmix64(stream + 0x9E3779B97F4A7C15)).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream);

// Deterministic 64-bit generator used everywhere in the library.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard, so a given seed reproduces the same draws on every conforming
// toolchain. Conversions to doubles are done here (not through
// std::uniform_real_distribution, whose algorithm is unspecified).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Stream owned by one Monte Carlo trial (or one threshold sample).
  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial) {
    return Rng(derive_seed(master_seed, trial));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform index in [0, n); n must be positive.
  std::size_t below(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pandora

#endif  // PANDORA_RNG_HPP_
