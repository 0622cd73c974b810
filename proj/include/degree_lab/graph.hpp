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

// Labelled graphs on {1..n}, connected components, and the decomposition of
// a graph into its large complex part, small complex part and non-complex
// part.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace degree_lab {

using Vertex = std::uint32_t;

/// Unordered vertex pair, stored with u <= v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  constexpr Edge() = default;
  constexpr Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  constexpr bool is_loop() const { return u == v; }
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on {1..n}. Edges are kept sorted, so two graphs
/// compare equal exactly when their edge sets are equal.
class LabeledGraph {
 public:
  LabeledGraph() = default;

  explicit LabeledGraph(Vertex n) : n_(n) {}

  LabeledGraph(Vertex n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    for (auto& e : edges_) {
      e = Edge(e.u, e.v);
      if (e.u < 1 || e.v > n_) {
        throw std::invalid_argument("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    "} has an endpoint outside 1.." + std::to_string(n_));
      }
      if (e.is_loop()) {
        throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
      }
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
      throw std::invalid_argument("duplicate edge {" + std::to_string(dup->u) + "," +
                                  std::to_string(dup->v) + "}");
    }
  }

  Vertex order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
};

/// Multigraph on {1..n}; loops and repeated edges allowed, insertion order kept.
class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(Vertex n) : n_(n) {}

  MultiGraph(Vertex n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    for (auto& e : edges_) {
      e = Edge(e.u, e.v);
      if (e.u < 1 || e.v > n_) {
        throw std::invalid_argument("multigraph edge endpoint outside 1.." + std::to_string(n_));
      }
    }
  }

  Vertex order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  bool has_loop() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
  }

  bool is_simple() const {
    if (has_loop()) return false;
    std::vector<Edge> sorted = edges_;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }

  /// Only valid when is_simple().
  LabeledGraph to_simple() const { return LabeledGraph(n_, edges_); }

 private:
  Vertex n_ = 0;
  std::vector<Edge> edges_;
};

/// A subgraph that keeps the labels of its host graph. Both lists are sorted.
struct Slice {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  bool empty() const { return vertices.empty(); }
  friend bool operator==(const Slice&, const Slice&) = default;
};

/// Slice viewed as a graph on the host vertex set {1..n}.
inline LabeledGraph to_graph(const Slice& s, Vertex n) {
  return LabeledGraph(n, s.edges);
}

/// Order-preserving relabelling of a slice onto {1..|V(s)|}.
inline LabeledGraph compact(const Slice& s) {
  auto rank = [&](Vertex x) {
    return static_cast<Vertex>(std::lower_bound(s.vertices.begin(), s.vertices.end(), x) -
                               s.vertices.begin() + 1);
  };
  std::vector<Edge> edges;
  edges.reserve(s.edges.size());
  for (const auto& e : s.edges) edges.emplace_back(rank(e.u), rank(e.v));
  return LabeledGraph(static_cast<Vertex>(s.vertices.size()), std::move(edges));
}

// ---------------------------------------------------------------------------
// Degrees

namespace detail {
inline std::vector<std::size_t> degrees_of(Vertex n, std::span<const Edge> edges) {
  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : edges) {
    ++deg[e.u - 1];
    ++deg[e.v - 1];  // a loop contributes two
  }
  return deg;
}

/// Compressed adjacency lists, 1-based vertices.
struct Adjacency {
  std::vector<std::size_t> offset;
  std::vector<Vertex> target;

  Adjacency(Vertex n, std::span<const Edge> edges) : offset(n + 2, 0), target(2 * edges.size()) {
    for (const auto& e : edges) {
      ++offset[e.u + 1];
      ++offset[e.v + 1];
    }
    std::partial_sum(offset.begin(), offset.end(), offset.begin());
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (const auto& e : edges) {
      target[fill[e.u]++] = e.v;
      target[fill[e.v]++] = e.u;
    }
  }

  std::span<const Vertex> neighbours(Vertex x) const {
    return {target.data() + offset[x], offset[x + 1] - offset[x]};
  }
};
}  // namespace detail

/// Entry v-1 is the degree of vertex v.
inline std::vector<std::size_t> degree_sequence(const LabeledGraph& g) {
  return detail::degrees_of(g.order(), g.edges());
}

inline std::vector<std::size_t> degree_sequence(const MultiGraph& g) {
  return detail::degrees_of(g.order(), g.edges());
}

template <class Graph>
std::size_t max_degree(const Graph& g) {
  const auto deg = degree_sequence(g);
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

/// Maximum degree of a slice, counting only slice edges.
inline std::size_t max_degree(const Slice& s) {
  if (s.edges.empty()) return 0;
  std::vector<std::size_t> deg(s.vertices.empty() ? 0 : s.vertices.back() + 1, 0);
  std::size_t best = 0;
  for (const auto& e : s.edges) {
    best = std::max({best, ++deg[e.u], ++deg[e.v]});
  }
  return best;
}

// ---------------------------------------------------------------------------
// Components

struct Component {
  std::vector<Vertex> vertices;  // sorted
  std::size_t edge_count = 0;

  friend bool operator==(const Component&, const Component&) = default;
};

/// Connected components, ordered by their smallest vertex.
inline std::vector<Component> components(const LabeledGraph& g) {
  const Vertex n = g.order();
  detail::Adjacency adj(n, g.edges());
  std::vector<std::uint32_t> label(n + 1, UINT32_MAX);
  std::vector<Component> out;
  std::vector<Vertex> stack;
  for (Vertex root = 1; root <= n; ++root) {
    if (label[root] != UINT32_MAX) continue;
    const auto id = static_cast<std::uint32_t>(out.size());
    Component comp;
    std::size_t degree_sum = 0;
    label[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      comp.vertices.push_back(x);
      const auto nb = adj.neighbours(x);
      degree_sum += nb.size();
      for (Vertex y : nb) {
        if (label[y] == UINT32_MAX) {
          label[y] = id;
          stack.push_back(y);
        }
      }
    }
    std::sort(comp.vertices.begin(), comp.vertices.end());
    comp.edge_count = degree_sum / 2;
    out.push_back(std::move(comp));
  }
  return out;
}

enum class ComponentKind { Tree, Unicyclic, Complex };

inline const char* to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::Tree: return "tree";
    case ComponentKind::Unicyclic: return "unicyclic";
    case ComponentKind::Complex: return "complex";
  }
  return "?";
}

/// Classifies a connected component by its excess e - v.
inline ComponentKind classify_component(std::size_t vertex_count, std::size_t edge_count) {
  if (vertex_count == 0 || edge_count + 1 < vertex_count) {
    throw std::invalid_argument("component with " + std::to_string(vertex_count) + " vertices and " +
                                std::to_string(edge_count) + " edges cannot be connected");
  }
  if (edge_count + 1 == vertex_count) return ComponentKind::Tree;
  if (edge_count == vertex_count) return ComponentKind::Unicyclic;
  return ComponentKind::Complex;
}

namespace detail {
inline bool is_complex(const Component& c) {
  return classify_component(c.vertices.size(), c.edge_count) == ComponentKind::Complex;
}

/// Vertices of each component, edges routed to the component of their endpoint.
inline Slice gather(const LabeledGraph& g, const std::vector<char>& member) {
  Slice s;
  for (Vertex x = 1; x <= g.order(); ++x) {
    if (member[x]) s.vertices.push_back(x);
  }
  for (const auto& e : g.edges()) {
    if (member[e.u] && member[e.v]) s.edges.push_back(e);
  }
  return s;
}

/// Marks vertices of the 2-core inside the vertices flagged in `active`.
/// Worklist peeling, O(n + m).
inline std::vector<char> peel(const LabeledGraph& g, std::vector<char> active) {
  detail::Adjacency adj(g.order(), g.edges());
  std::vector<std::size_t> deg(g.order() + 1, 0);
  std::vector<Vertex> work;
  for (Vertex x = 1; x <= g.order(); ++x) {
    if (!active[x]) continue;
    for (Vertex y : adj.neighbours(x)) deg[x] += active[y] ? 1 : 0;
    if (deg[x] <= 1) work.push_back(x);
  }
  while (!work.empty()) {
    const Vertex x = work.back();
    work.pop_back();
    if (!active[x]) continue;
    active[x] = 0;
    for (Vertex y : adj.neighbours(x)) {
      if (active[y] && --deg[y] == 1) work.push_back(y);
    }
  }
  return active;
}
}  // namespace detail

/// Union of all complex components (those with at least two cycles).
inline Slice complex_part(const LabeledGraph& g) {
  std::vector<char> member(g.order() + 1, 0);
  for (const auto& c : components(g)) {
    if (!detail::is_complex(c)) continue;
    for (Vertex x : c.vertices) member[x] = 1;
  }
  return detail::gather(g, member);
}

/// Maximal subgraph of the complex part with minimum degree at least two.
inline Slice core_of(const LabeledGraph& g) {
  std::vector<char> member(g.order() + 1, 0);
  for (const auto& c : components(g)) {
    if (!detail::is_complex(c)) continue;
    for (Vertex x : c.vertices) member[x] = 1;
  }
  return detail::gather(g, detail::peel(g, std::move(member)));
}

struct Decomposition {
  Slice large_complex;  // complex component holding the largest core component
  Slice small_complex;  // remaining complex components
  Slice non_complex;    // trees and unicyclic components, isolated vertices included
  Slice core;
  std::vector<Vertex> core_largest_component;
};

/// Splits g into large complex, small complex and non-complex parts.
/// Among complex components with equally large core pieces the one with the
/// smallest vertex label becomes the large part.
inline Decomposition split(const LabeledGraph& g) {
  const auto comps = components(g);
  std::vector<char> complex(g.order() + 1, 0);
  for (const auto& c : comps) {
    if (!detail::is_complex(c)) continue;
    for (Vertex x : c.vertices) complex[x] = 1;
  }
  const auto in_core = detail::peel(g, complex);

  // Each complex component has a connected, non-empty core piece.
  std::ptrdiff_t large = -1;
  std::size_t large_core = 0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (!complex[comps[i].vertices.front()]) continue;
    const auto core_size = static_cast<std::size_t>(std::count_if(
        comps[i].vertices.begin(), comps[i].vertices.end(), [&](Vertex x) { return in_core[x]; }));
    if (core_size > large_core) {
      large_core = core_size;
      large = static_cast<std::ptrdiff_t>(i);
    }
  }

  std::vector<char> in_large(g.order() + 1, 0);
  std::vector<char> in_small = complex;
  std::vector<char> in_rest(g.order() + 1, 0);
  for (Vertex x = 1; x <= g.order(); ++x) in_rest[x] = !complex[x];
  Decomposition d;
  if (large >= 0) {
    for (Vertex x : comps[static_cast<std::size_t>(large)].vertices) {
      in_large[x] = 1;
      in_small[x] = 0;
      if (in_core[x]) d.core_largest_component.push_back(x);
    }
  }
  d.large_complex = detail::gather(g, in_large);
  d.small_complex = detail::gather(g, in_small);
  d.non_complex = detail::gather(g, in_rest);
  d.core = detail::gather(g, in_core);
  return d;
}

}  // namespace degree_lab
