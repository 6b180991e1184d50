// Copyright 2026 The folkwalk Authors
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
#include <random>
#include <span>
#include <utility>

namespace folkwalk {

// std::mt19937_64 output is fully specified by the standard, unlike the
// standard distributions, so bounded draws and shuffles are done here to keep
// splits and random baselines identical across standard libraries.
using Engine = std::mt19937_64;

// Uniform integer in [0, bound) by rejection; bound must be > 0.
inline std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
  const std::uint64_t limit = Engine::max() - Engine::max() % bound;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % bound;
}

// Uniform real in [0, 1) with 53 random bits.
inline double uniform_unit(Engine& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Moves a uniform random k-subset (in random order) to the front of `values`.
template <typename T>
void partial_shuffle(std::span<T> values, std::size_t k, Engine& rng) {
  for (std::size_t i = 0; i < k && i + 1 < values.size(); ++i) {
    const std::size_t j = i + uniform_below(rng, values.size() - i);
    std::swap(values[i], values[j]);
  }
}

// Decorrelates consecutive seeds (base_seed + r) before seeding an engine.
inline std::uint64_t mix_seed(std::uint64_t seed) {
  seed += 0x9e3779b97f4a7c15ULL;
  seed = (seed ^ (seed >> 30)) * 0xbf58476d1ce4e5b9ULL;
  seed = (seed ^ (seed >> 27)) * 0x94d049bb133111ebULL;
  return seed ^ (seed >> 31);
}

}  // namespace folkwalk
