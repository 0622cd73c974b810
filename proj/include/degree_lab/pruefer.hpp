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

// Forests on {1..n} with t trees whose roots 1..t lie in distinct trees, and
// their Pruefer-style codes.
//
// Encoding repeatedly deletes the leaf with the largest label and records its
// neighbour. The resulting sequence has length n - t, its last entry is a
// root, and vertex v occurs deg(v) times if v is a root, deg(v) - 1 times
// otherwise. Every sequence in [n]^{n-t-1} x [t] decodes to exactly one
// forest, so a uniform sequence gives a uniform forest.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "degree_lab/balls_bins.hpp"
#include "degree_lab/graph.hpp"
#include "degree_lab/rng.hpp"

namespace degree_lab {

using PrueferSequence = std::vector<Vertex>;

class RootedForest {
 public:
  RootedForest() = default;

  /// Validates acyclicity, the edge count n - t and root separation.
  RootedForest(Vertex n, Vertex t, std::vector<Edge> edges) : graph_(n, std::move(edges)), t_(t) {
    if (t < 1 || t > n) {
      throw std::invalid_argument("rooted forest: need 1 <= t <= n, got t = " + std::to_string(t) +
                                  ", n = " + std::to_string(n));
    }
    if (graph_.size() != static_cast<std::size_t>(n - t)) {
      throw std::invalid_argument("rooted forest: expected n - t = " + std::to_string(n - t) +
                                  " edges, got " + std::to_string(graph_.size()));
    }
    std::vector<Vertex> parent(n + 1);
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : graph_.edges()) {
      const Vertex a = find(e.u);
      const Vertex b = find(e.v);
      if (a == b) {
        throw std::invalid_argument("rooted forest: edge {" + std::to_string(e.u) + "," +
                                    std::to_string(e.v) + "} closes a cycle");
      }
      parent[a] = b;
    }
    // n - t edges and no cycle leave exactly t trees.
    std::vector<char> seen(n + 1, 0);
    for (Vertex r = 1; r <= t; ++r) {
      const Vertex rep = find(r);
      if (seen[rep]) {
        throw std::invalid_argument("rooted forest: root " + std::to_string(r) +
                                    " shares a tree with a smaller root");
      }
      seen[rep] = 1;
    }
  }

  Vertex order() const { return graph_.order(); }
  Vertex roots() const { return t_; }
  std::span<const Edge> edges() const { return graph_.edges(); }
  const LabeledGraph& graph() const { return graph_; }

  friend bool operator==(const RootedForest&, const RootedForest&) = default;

 private:
  LabeledGraph graph_;
  Vertex t_ = 0;
};

/// Checks that s is a code for F(n, t): length n - t, entries in 1..n, last
/// entry in 1..t. The empty sequence is the unique code when n = t.
inline void validate_sequence(std::span<const Vertex> s, Vertex n, Vertex t) {
  if (t < 1 || t > n) throw std::invalid_argument("pruefer: need 1 <= t <= n");
  if (s.size() != static_cast<std::size_t>(n - t)) {
    throw std::invalid_argument("pruefer: sequence length " + std::to_string(s.size()) +
                                " != n - t = " + std::to_string(n - t));
  }
  for (Vertex x : s) {
    if (x < 1 || x > n) throw std::invalid_argument("pruefer: entry outside 1..n");
  }
  if (!s.empty() && s.back() > t) {
    throw std::invalid_argument("pruefer: last entry " + std::to_string(s.back()) +
                                " is not a root");
  }
}

inline PrueferSequence encode(const RootedForest& forest) {
  const Vertex n = forest.order();
  std::vector<std::uint32_t> deg(n + 1, 0);
  // XOR of current neighbours: a leaf's only neighbour is read off directly.
  std::vector<Vertex> nb_xor(n + 1, 0);
  for (const auto& e : forest.edges()) {
    ++deg[e.u];
    ++deg[e.v];
    nb_xor[e.u] ^= e.v;
    nb_xor[e.v] ^= e.u;
  }
  std::priority_queue<Vertex> leaves;
  for (Vertex x = 1; x <= n; ++x) {
    if (deg[x] == 1) leaves.push(x);
  }
  PrueferSequence out;
  out.reserve(n - forest.roots());
  while (out.size() < static_cast<std::size_t>(n - forest.roots())) {
    const Vertex y = leaves.top();
    leaves.pop();
    if (deg[y] != 1) continue;  // stale: its neighbour was deleted first
    if (y <= forest.roots()) throw std::logic_error("pruefer: root selected as deleted leaf");
    const Vertex x = nb_xor[y];
    out.push_back(x);
    deg[y] = 0;
    nb_xor[x] ^= y;
    if (--deg[x] == 1) leaves.push(x);
  }
  return out;
}

inline RootedForest decode(std::span<const Vertex> s, Vertex n, Vertex t) {
  validate_sequence(s, n, t);
  std::vector<std::uint32_t> deg(n + 1, 0);
  for (Vertex x : s) ++deg[x];
  for (Vertex x = t + 1; x <= n; ++x) ++deg[x];
  std::priority_queue<Vertex> ones;
  for (Vertex x = 1; x <= n; ++x) {
    if (deg[x] == 1) ones.push(x);
  }
  std::vector<Edge> edges;
  edges.reserve(s.size());
  for (Vertex x : s) {
    while (!ones.empty() && deg[ones.top()] != 1) ones.pop();
    if (ones.empty()) throw std::logic_error("pruefer: no vertex of multiplicity one");
    const Vertex y = ones.top();
    ones.pop();
    edges.emplace_back(x, y);
    --deg[y];
    if (--deg[x] == 1) ones.push(x);
  }
  return RootedForest(n, t, std::move(edges));
}

/// Number of entries of s equal to v.
inline std::size_t occurrences(Vertex v, std::span<const Vertex> s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), v));
}

/// Degree of v in decode(s, n, t).
inline std::size_t degree_from_sequence(Vertex v, std::span<const Vertex> s, Vertex t) {
  return occurrences(v, s) + (v > t ? 1 : 0);
}

/// Uniform code in [n]^{n-t-1} x [t]: n - t - 1 balls into n bins, then a
/// uniform root.
template <class Urbg>
PrueferSequence sample_sequence(Vertex n, Vertex t, Urbg& gen) {
  if (t < 1 || t > n) throw std::invalid_argument("sample_forest: need 1 <= t <= n");
  if (n == t) return {};
  auto balls = throw_balls(n, n - t - 1, gen);
  PrueferSequence s = std::move(balls.entries);
  s.push_back(static_cast<Vertex>(uniform_below(gen, t)) + 1);
  return s;
}

template <class Urbg>
RootedForest sample_forest(Vertex n, Vertex t, Urbg& gen) {
  const auto s = sample_sequence(n, t, gen);
  return decode(s, n, t);
}

inline RootedForest sample_forest(Vertex n, Vertex t, Seed seed) {
  auto gen = make_engine(seed);
  return sample_forest(n, t, gen);
}

/// |F(n, t)| = t n^{n-t-1}, and 1 when n = t. Throws on 64-bit overflow.
inline std::uint64_t forest_count(Vertex n, Vertex t) {
  if (t < 1 || t > n) throw std::invalid_argument("forest_count: need 1 <= t <= n");
  if (n == t) return 1;
  std::uint64_t result = t;
  for (Vertex i = 0; i + t + 1 < n; ++i) {
    if (__builtin_mul_overflow(result, std::uint64_t{n}, &result)) {
      throw std::overflow_error("forest_count: t n^(n-t-1) exceeds 64 bits");
    }
  }
  return result;
}

}  // namespace degree_lab
