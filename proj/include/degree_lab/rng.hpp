// Copyright 2026 The degree-lab Authors
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

// Seeded random streams for reproducible trials.
//
// Every sampler in this library takes a 64-bit seed and builds its own
// generator from it. Independent streams for trial i of an experiment with
// master seed M are obtained as derive_seed(M, i), so a single trial can be
// replayed from the seed printed in a report.

#include <cstdint>
#include <limits>
#include <random>

namespace degree_lab {

using Seed = std::uint64_t;

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Stream derivation: derive_seed(master, i) = mix64(master + (i + 1) * phi64).
constexpr Seed derive_seed(Seed master, std::uint64_t index) noexcept {
  return mix64(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// The generator used by every sampler. std::mt19937_64 has a fully
/// specified output sequence, so draws are identical across standard
/// libraries as long as no std:: distribution is involved.
using Engine = std::mt19937_64;

inline Engine make_engine(Seed seed) { return Engine(seed); }

/// Uniform integer in [0, bound) by Lemire's multiply-and-reject method.
/// No modulo bias; bound must be positive.
template <class Urbg>
std::uint64_t uniform_below(Urbg& gen, std::uint64_t bound) {
  static_assert(Urbg::min() == 0 &&
                    Urbg::max() == std::numeric_limits<std::uint64_t>::max(),
                "uniform_below needs a full-range 64-bit generator");
  unsigned __int128 product =
      static_cast<unsigned __int128>(gen()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(gen()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

/// Uniform integer in [lo, hi].
template <class Urbg>
std::uint64_t uniform_between(Urbg& gen, std::uint64_t lo, std::uint64_t hi) {
  return lo + uniform_below(gen, hi - lo + 1);
}

}  // namespace degree_lab
