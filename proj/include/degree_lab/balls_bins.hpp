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

// k balls thrown independently and uniformly into n bins.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "degree_lab/rng.hpp"

namespace degree_lab {

/// entries[i] is the bin (1..n) that ball i landed in.
struct LocationVector {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> entries;
};

/// loads[j-1] is the number of balls in bin j.
struct LoadVector {
  std::vector<std::uint32_t> loads;

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto l : loads) s += l;
    return s;
  }
};

template <class Urbg>
LocationVector throw_balls(std::uint32_t n, std::size_t k, Urbg& gen) {
  if (n == 0) throw std::invalid_argument("throw_balls: need at least one bin");
  LocationVector out{n, std::vector<std::uint32_t>(k)};
  for (auto& e : out.entries) e = static_cast<std::uint32_t>(uniform_below(gen, n)) + 1;
  return out;
}

inline LocationVector throw_balls(std::uint32_t n, std::size_t k, Seed seed) {
  auto gen = make_engine(seed);
  return throw_balls(n, k, gen);
}

inline LoadVector loads(const LocationVector& loc) {
  LoadVector out{std::vector<std::uint32_t>(loc.n, 0)};
  for (auto bin : loc.entries) ++out.loads[bin - 1];
  return out;
}

inline std::uint32_t max_load(const LoadVector& lv) {
  return lv.loads.empty() ? 0 : *std::max_element(lv.loads.begin(), lv.loads.end());
}

/// Maximum load over bins 1..t.
inline std::uint32_t max_load_prefix(const LoadVector& lv, std::size_t t) {
  if (t < 1 || t > lv.loads.size()) {
    throw std::out_of_range("max_load_prefix: t = " + std::to_string(t) + " outside 1.." +
                            std::to_string(lv.loads.size()));
  }
  return *std::max_element(lv.loads.begin(), lv.loads.begin() + static_cast<std::ptrdiff_t>(t));
}

inline std::uint32_t max_load(const LocationVector& loc) { return max_load(loads(loc)); }

inline std::uint32_t max_load_prefix(const LocationVector& loc, std::size_t t) {
  return max_load_prefix(loads(loc), t);
}

/// Expected number of bins holding exactly l balls,
/// mu(l) = n C(k,l) n^{-l} (1 - 1/n)^{k-l}, evaluated through log-gamma.
inline double expected_census(double n, std::uint64_t k, std::uint64_t l) {
  if (l > k) throw std::invalid_argument("expected_census: l > k");
  if (!(n >= 1)) throw std::invalid_argument("expected_census: n must be >= 1");
  if (n == 1) return l == k ? 1.0 : 0.0;
  const auto kd = static_cast<double>(k);
  const auto ld = static_cast<double>(l);
  const double log_mu = std::log(n) + std::lgamma(kd + 1) - std::lgamma(ld + 1) -
                        std::lgamma(kd - ld + 1) - ld * std::log(n) +
                        (kd - ld) * std::log1p(-1 / n);
  return std::exp(log_mu);
}

/// Number of bins per load value; counts sum to n.
inline std::map<std::uint32_t, std::uint64_t> census(const LoadVector& lv) {
  std::map<std::uint32_t, std::uint64_t> out;
  for (auto l : lv.loads) ++out[l];
  return out;
}

inline std::map<std::uint32_t, std::uint64_t> census(const LocationVector& loc) {
  return census(loads(loc));
}

}  // namespace degree_lab
