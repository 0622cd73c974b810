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

// Plain-text edge lists.
//
//   n m            simple graph, then m lines "u v" with 1 <= u < v <= n
//   n m multi      multigraph; loops "u u" and repeated lines allowed
//   n m roots=t    rooted forest, roots are vertices 1..t

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "degree_lab/graph.hpp"

namespace degree_lab {

struct EdgeListHeader {
  Vertex n = 0;
  std::size_t m = 0;
  bool multi = false;
  std::optional<Vertex> roots;
};

struct EdgeList {
  EdgeListHeader header;
  std::vector<Edge> edges;  // as read, u <= v after normalisation
};

inline EdgeList read_edge_list(std::istream& in) {
  EdgeList out;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("edge list: missing header line");
  std::istringstream head(line);
  long long n = -1;
  long long m = -1;
  if (!(head >> n >> m) || n < 0 || m < 0 || n > UINT32_MAX) {
    throw std::runtime_error("edge list: malformed header '" + line + "'");
  }
  out.header.n = static_cast<Vertex>(n);
  out.header.m = static_cast<std::size_t>(m);
  std::string tag;
  while (head >> tag) {
    if (tag == "multi") {
      out.header.multi = true;
    } else if (tag.rfind("roots=", 0) == 0) {
      try {
        out.header.roots = static_cast<Vertex>(std::stoul(tag.substr(6)));
      } catch (const std::exception&) {
        throw std::runtime_error("edge list: bad roots tag '" + tag + "'");
      }
    } else {
      throw std::runtime_error("edge list: unknown header tag '" + tag + "'");
    }
  }
  out.edges.reserve(out.header.m);
  for (std::size_t i = 0; i < out.header.m; ++i) {
    long long u = 0;
    long long v = 0;
    if (!(in >> u >> v)) {
      throw std::runtime_error("edge list: expected " + std::to_string(m) + " edges, got " +
                               std::to_string(i));
    }
    if (u < 1 || v < 1 || u > n || v > n) {
      throw std::runtime_error("edge list: edge " + std::to_string(u) + " " + std::to_string(v) +
                               " outside 1.." + std::to_string(n));
    }
    if (!out.header.multi && u >= v) {
      throw std::runtime_error("edge list: simple graph lines need u < v (line " +
                               std::to_string(i + 2) + ")");
    }
    out.edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return out;
}

inline LabeledGraph read_graph(std::istream& in) {
  auto list = read_edge_list(in);
  if (list.header.multi) throw std::runtime_error("edge list: expected a simple graph, got multi");
  return LabeledGraph(list.header.n, std::move(list.edges));
}

inline MultiGraph read_multigraph(std::istream& in) {
  auto list = read_edge_list(in);
  return MultiGraph(list.header.n, std::move(list.edges));
}

inline void write_edges(std::ostream& out, std::span<const Edge> edges) {
  for (const auto& e : edges) out << e.u << ' ' << e.v << '\n';
}

inline void write_graph(std::ostream& out, const LabeledGraph& g) {
  out << g.order() << ' ' << g.size() << '\n';
  write_edges(out, g.edges());
}

inline void write_multigraph(std::ostream& out, const MultiGraph& g) {
  out << g.order() << ' ' << g.size() << " multi\n";
  write_edges(out, g.edges());
}

}  // namespace degree_lab
