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

// Samplers for G(n,m), for graphs without complex components, for complex
// graphs with a prescribed core, and for the three-part pipeline that glues
// them together.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "degree_lab/balls_bins.hpp"
#include "degree_lab/graph.hpp"
#include "degree_lab/pruefer.hpp"
#include "degree_lab/rng.hpp"

namespace degree_lab {

/// Thrown when a rejection loop gives up.
class RejectionCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SamplerLimits {
  std::uint64_t gnm_attempts = 10'000;  // multigraph draws per simple graph
  std::uint64_t cs_attempts = 100'000;  // G(n,m) draws per complex-free graph
};

/// Throws 2m balls into n bins; edge i joins the bins of balls 2i-1 and 2i.
/// The degree of v is the load of bin v.
template <class Urbg>
MultiGraph sample_multigraph(Vertex n, std::size_t m, Urbg& gen) {
  if (n == 0) throw std::invalid_argument("sample_multigraph: need n >= 1");
  const auto balls = throw_balls(n, 2 * m, gen);
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    edges.emplace_back(balls.entries[2 * i], balls.entries[2 * i + 1]);
  }
  return MultiGraph(n, std::move(edges));
}

inline MultiGraph sample_multigraph(Vertex n, std::size_t m, Seed seed) {
  auto gen = make_engine(seed);
  return sample_multigraph(n, m, gen);
}

struct GnmDraw {
  LabeledGraph graph;
  std::uint64_t rejections = 0;  // non-simple multigraphs discarded
};

inline std::uint64_t pair_count(Vertex n) {
  return static_cast<std::uint64_t>(n) * (n - (n > 0 ? 1 : 0)) / 2;
}

namespace detail {
// Simplicity check that reuses a scratch buffer.
inline bool simple_edges(std::span<const Edge> edges, std::vector<Edge>& scratch) {
  scratch.assign(edges.begin(), edges.end());
  for (const auto& e : scratch) {
    if (e.is_loop()) return false;
  }
  std::sort(scratch.begin(), scratch.end());
  return std::adjacent_find(scratch.begin(), scratch.end()) == scratch.end();
}
}  // namespace detail

/// Uniform G(n,m): pairing multigraphs conditioned on being simple. Every
/// simple graph arises from exactly 2^m m! ball sequences.
template <class Urbg>
GnmDraw sample_gnm(Vertex n, std::size_t m, Urbg& gen, const SamplerLimits& limits = {}) {
  if (n == 0) throw std::invalid_argument("sample_gnm: need n >= 1");
  if (m > pair_count(n)) {
    throw std::invalid_argument("sample_gnm: m = " + std::to_string(m) + " exceeds C(n,2)");
  }
  GnmDraw out;
  std::vector<Edge> scratch;
  for (;;) {
    const auto multi = sample_multigraph(n, m, gen);
    if (detail::simple_edges(multi.edges(), scratch)) {
      out.graph = LabeledGraph(n, std::move(scratch));
      return out;
    }
    if (++out.rejections >= limits.gnm_attempts) {
      throw RejectionCapExceeded("sample_gnm: no simple multigraph in " +
                                 std::to_string(limits.gnm_attempts) + " attempts (n=" +
                                 std::to_string(n) + ", m=" + std::to_string(m) + ")");
    }
  }
}

inline GnmDraw sample_gnm(Vertex n, std::size_t m, Seed seed, const SamplerLimits& limits = {}) {
  auto gen = make_engine(seed);
  return sample_gnm(n, m, gen, limits);
}

/// True when no component has two or more cycles.
inline bool is_complex_free(const LabeledGraph& g) {
  for (const auto& c : components(g)) {
    if (classify_component(c.vertices.size(), c.edge_count) == ComponentKind::Complex) {
      return false;
    }
  }
  return true;
}

struct CsDraw {
  LabeledGraph graph;
  std::uint64_t attempts = 0;              // G(n,m) draws, the accepted one included
  std::uint64_t multigraph_rejections = 0;
};

/// Uniform graph on [n] with m edges and no complex component, by rejection
/// from G(n,m).
template <class Urbg>
CsDraw sample_cs(Vertex n, std::size_t m, Urbg& gen, const SamplerLimits& limits = {}) {
  if (n == 0 && m == 0) return {};
  if (m > n) {
    throw std::invalid_argument("sample_cs: a graph without complex components has m <= n");
  }
  CsDraw out;
  for (;;) {
    auto draw = sample_gnm(n, m, gen, limits);
    ++out.attempts;
    out.multigraph_rejections += draw.rejections;
    if (is_complex_free(draw.graph)) {
      out.graph = std::move(draw.graph);
      return out;
    }
    if (out.attempts >= limits.cs_attempts) {
      throw RejectionCapExceeded("sample_cs: no complex-free graph in " +
                                 std::to_string(limits.cs_attempts) + " attempts (n=" +
                                 std::to_string(n) + ", m=" + std::to_string(m) + ")");
    }
  }
}

inline CsDraw sample_cs(Vertex n, std::size_t m, Seed seed, const SamplerLimits& limits = {}) {
  auto gen = make_engine(seed);
  return sample_cs(n, m, gen, limits);
}

/// Checks that c can be the core of a complex graph: every vertex has degree
/// at least two and every component has at least two cycles.
inline void validate_core(const LabeledGraph& c) {
  const auto deg = degree_sequence(c);
  for (std::size_t i = 0; i < deg.size(); ++i) {
    if (deg[i] < 2) {
      throw std::invalid_argument("core: vertex " + std::to_string(i + 1) + " has degree " +
                                  std::to_string(deg[i]) + " < 2");
    }
  }
  for (const auto& comp : components(c)) {
    if (classify_component(comp.vertices.size(), comp.edge_count) != ComponentKind::Complex) {
      throw std::invalid_argument("core: component containing vertex " +
                                  std::to_string(comp.vertices.front()) +
                                  " is a cycle, not a complex component");
    }
  }
}

struct ComplexDraw {
  LabeledGraph graph;  // on {1..q}; core vertices keep labels 1..v(C)
  RootedForest forest; // the attached forest, roots 1..v(C)
};

/// Uniform complex graph on {1..q} with core c: attach a uniform forest
/// F(q, v(c)) whose roots are the core vertices.
template <class Urbg>
ComplexDraw sample_complex(const LabeledGraph& core, Vertex q, Urbg& gen) {
  if (core.order() == 0) throw std::invalid_argument("sample_complex: empty core");
  if (q < core.order()) {
    throw std::invalid_argument("sample_complex: q = " + std::to_string(q) + " < v(C) = " +
                                std::to_string(core.order()));
  }
  validate_core(core);
  ComplexDraw out;
  out.forest = sample_forest(q, core.order(), gen);
  std::vector<Edge> edges(core.edges().begin(), core.edges().end());
  edges.insert(edges.end(), out.forest.edges().begin(), out.forest.edges().end());
  out.graph = LabeledGraph(q, std::move(edges));
  return out;
}

inline ComplexDraw sample_complex(const LabeledGraph& core, Vertex q, Seed seed) {
  auto gen = make_engine(seed);
  return sample_complex(core, q, gen);
}

// ---------------------------------------------------------------------------
// Pipeline

struct PipelineSpec {
  LabeledGraph core;  // minimum degree >= 2, every component complex
  Vertex l = 0;       // order of the large complex part
  Vertex r = 0;       // order of the small complex part
  Vertex n = 0;       // total order
  std::size_t m = 0;  // total size
};

/// The core split into its largest component and the rest, each relabelled
/// onto {1..k} preserving order. Ties go to the component with the smallest
/// vertex.
struct CoreParts {
  LabeledGraph largest;
  LabeledGraph rest;
};

inline CoreParts split_core(const LabeledGraph& core) {
  const auto comps = components(core);
  std::size_t best = comps.size();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (best == comps.size() || comps[i].vertices.size() > comps[best].vertices.size()) best = i;
  }
  std::vector<char> in_largest(core.order() + 1, 0);
  std::vector<char> in_rest(core.order() + 1, 0);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (Vertex x : comps[i].vertices) (i == best ? in_largest : in_rest)[x] = 1;
  }
  return {compact(detail::gather(core, in_largest)), compact(detail::gather(core, in_rest))};
}

/// The core as the pipeline lays it out: largest component on the lowest
/// labels, the rest after it.
inline LabeledGraph core_layout(const CoreParts& parts) {
  const Vertex shift = parts.largest.order();
  std::vector<Edge> edges(parts.largest.edges().begin(), parts.largest.edges().end());
  for (const auto& e : parts.rest.edges()) edges.emplace_back(e.u + shift, e.v + shift);
  return LabeledGraph(shift + parts.rest.order(), std::move(edges));
}

struct PipelineBudget {
  Vertex u = 0;       // order of the non-complex part
  std::size_t w = 0;  // size of the non-complex part
};

/// Validates the spec and returns u = n - l - r and w = m - e(C) + v(C) - l - r.
inline PipelineBudget pipeline_budget(const PipelineSpec& spec, const CoreParts& parts) {
  if (parts.largest.order() == 0 && spec.l != 0) {
    throw std::invalid_argument("pipeline: empty core needs l = 0");
  }
  if (parts.rest.order() == 0 && spec.r != 0) {
    throw std::invalid_argument("pipeline: core has a single component, so r must be 0");
  }
  if (spec.l < parts.largest.order()) {
    throw std::invalid_argument("pipeline: l = " + std::to_string(spec.l) +
                                " is below the largest core component order " +
                                std::to_string(parts.largest.order()));
  }
  if (spec.r < parts.rest.order()) {
    throw std::invalid_argument("pipeline: r = " + std::to_string(spec.r) +
                                " is below the order of the remaining core " +
                                std::to_string(parts.rest.order()));
  }
  const auto n = static_cast<std::int64_t>(spec.n);
  const auto u = n - spec.l - spec.r;
  if (u < 0) throw std::invalid_argument("pipeline: l + r exceeds n");
  const auto w = static_cast<std::int64_t>(spec.m) - static_cast<std::int64_t>(spec.core.size()) +
                 static_cast<std::int64_t>(spec.core.order()) - spec.l - spec.r;
  if (w < 0) {
    throw std::invalid_argument("pipeline: edge budget w = " + std::to_string(w) +
                                " for the non-complex part is negative");
  }
  if (w > u) {
    throw std::invalid_argument("pipeline: non-complex part needs w <= u, got w = " +
                                std::to_string(w) + ", u = " + std::to_string(u));
  }
  return {static_cast<Vertex>(u), static_cast<std::size_t>(w)};
}

struct PipelineDraw {
  LabeledGraph graph;
  PipelineBudget budget;
  std::uint64_t cs_attempts = 0;
};

/// Independent draws of the large complex part Q(L(C), l) on {1..l}, the
/// small complex part Q(C - L(C), r) on {l+1..l+r} and a complex-free
/// CS(u, w) on the remaining labels. Sub-samplers use derive_seed(seed, 0..2).
/// With shuffle_labels a uniform relabelling (seed stream 3) is applied last.
inline PipelineDraw sample_pipeline(const PipelineSpec& spec, Seed seed,
                                    const SamplerLimits& limits = {}, bool shuffle_labels = false) {
  if (spec.n == 0) throw std::invalid_argument("pipeline: n must be positive");
  if (spec.core.order() > 0) validate_core(spec.core);
  const auto parts = split_core(spec.core);
  PipelineDraw out;
  out.budget = pipeline_budget(spec, parts);

  std::vector<Edge> edges;
  edges.reserve(spec.m);
  auto append = [&edges](const LabeledGraph& g, Vertex offset) {
    for (const auto& e : g.edges()) edges.emplace_back(e.u + offset, e.v + offset);
  };
  if (spec.l > 0) append(sample_complex(parts.largest, spec.l, derive_seed(seed, 0)).graph, 0);
  if (spec.r > 0) append(sample_complex(parts.rest, spec.r, derive_seed(seed, 1)).graph, spec.l);
  if (out.budget.u > 0) {
    auto cs = sample_cs(out.budget.u, out.budget.w, derive_seed(seed, 2), limits);
    out.cs_attempts = cs.attempts;
    append(cs.graph, spec.l + spec.r);
  }
  if (shuffle_labels) {
    std::vector<Vertex> perm(spec.n + 1);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    auto gen = make_engine(derive_seed(seed, 3));
    for (Vertex i = spec.n; i > 1; --i) {
      std::swap(perm[i], perm[1 + uniform_below(gen, i)]);
    }
    for (auto& e : edges) e = Edge(perm[e.u], perm[e.v]);
  }
  out.graph = LabeledGraph(spec.n, std::move(edges));
  return out;
}

// ---------------------------------------------------------------------------
// Exact census

/// All simple graphs on [n] with m edges, as sorted edge lists in
/// lexicographic order of their edge combinations.
inline std::vector<std::vector<Edge>> enumerate_gnm(Vertex n, std::size_t m,
                                                    std::uint64_t max_graphs = 10'000) {
  std::vector<Edge> pairs;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) pairs.emplace_back(u, v);
  }
  if (m > pairs.size()) throw std::invalid_argument("enumerate_gnm: m exceeds C(n,2)");
  // C(P, m) with early exit once the cap is passed.
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < m; ++i) {
    count = count * (pairs.size() - i) / (i + 1);
    if (count > max_graphs) {
      throw std::invalid_argument("enumerate_gnm: more than " + std::to_string(max_graphs) +
                                  " graphs for n=" + std::to_string(n) + ", m=" +
                                  std::to_string(m));
    }
  }
  std::vector<std::vector<Edge>> out;
  out.reserve(count);
  std::vector<std::size_t> pick(m);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  for (;;) {
    std::vector<Edge> g;
    g.reserve(m);
    for (auto i : pick) g.push_back(pairs[i]);
    out.push_back(std::move(g));
    std::size_t i = m;
    while (i > 0 && pick[i - 1] == pairs.size() - m + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

struct CensusReport {
  std::vector<std::vector<Edge>> graphs;
  std::vector<std::uint64_t> counts;  // parallel to graphs
  std::uint64_t trials = 0;
  double tv_distance = 0;             // total variation to the uniform law
  double chi_square = 0;
  std::size_t degrees_of_freedom = 0;
  bool insufficient = false;          // set when trials == 0
};

/// Distance between the empirical law of `trials` sample_gnm draws (trial i
/// uses derive_seed(seed, i)) and the uniform law on all graphs.
inline CensusReport exact_census_gnm(Vertex n, std::size_t m, std::uint64_t trials, Seed seed,
                                     const SamplerLimits& limits = {},
                                     std::uint64_t max_graphs = 10'000) {
  CensusReport out;
  out.graphs = enumerate_gnm(n, m, max_graphs);
  out.counts.assign(out.graphs.size(), 0);
  out.trials = trials;
  out.degrees_of_freedom = out.graphs.size() - 1;
  std::map<std::vector<Edge>, std::size_t> index;
  for (std::size_t i = 0; i < out.graphs.size(); ++i) index.emplace(out.graphs[i], i);
  for (std::uint64_t i = 0; i < trials; ++i) {
    const auto draw = sample_gnm(n, m, derive_seed(seed, i), limits);
    const std::vector<Edge> key(draw.graph.edges().begin(), draw.graph.edges().end());
    ++out.counts[index.at(key)];
  }
  const double p = 1.0 / static_cast<double>(out.graphs.size());
  if (trials == 0) {
    out.insufficient = true;
    out.tv_distance = 1 - p;
    return out;
  }
  const double expected = static_cast<double>(trials) * p;
  double tv = 0;
  for (auto c : out.counts) {
    const double freq = static_cast<double>(c) / static_cast<double>(trials);
    tv += std::abs(freq - p);
    out.chi_square += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) /
                      expected;
  }
  out.tv_distance = tv / 2;
  return out;
}

}  // namespace degree_lab
