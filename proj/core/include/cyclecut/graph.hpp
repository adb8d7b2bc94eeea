// Copyright 2026 The CycleCut Authors
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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cyclecut/rational.hpp"

namespace cyclecut {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;
// Sorted ascending whenever it stands for a set.
using VertexList = std::vector<Vertex>;
using Path = std::vector<Vertex>;

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists
// and an adjacency bit matrix for O(1) edge queries.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  // Throws InvalidArgument on loops, out-of-range endpoints or repeated edges.
  static Graph from_edges(int n, std::span<const Edge> edges);

  int num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return m_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
  bool has_edge(Vertex u, Vertex v) const;
  bool contains(Vertex v) const noexcept { return v >= 0 && v < n_; }

  // All edges as (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

 private:
  int n_ = 0;
  std::size_t m_ = 0;
  std::size_t words_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> bits_;
};

struct RegularityInfo {
  int n = 0;
  int d = 0;
  Rational c;  // d / n
};

// Throws NotRegular naming two vertices of different degree, SizeTooSmall
// for graphs with fewer than two vertices or degree zero.
RegularityInfo validate_regular(const Graph& g);

// Membership mask of a vertex list.
std::vector<char> make_mask(int n, std::span<const Vertex> set);
int count_neighbors_in(const Graph& g, Vertex v, const std::vector<char>& mask);
std::int64_t count_edges_between(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y);
std::int64_t count_edges_within(const Graph& g, std::span<const Vertex> set);

// Connected components of G[set], each sorted, ordered by smallest vertex.
std::vector<VertexList> components(const Graph& g, std::span<const Vertex> set);
std::vector<VertexList> components(const Graph& g);

// Proper 2-colouring (0/1 per vertex, smallest vertex of each component
// gets 0) or nullopt when the graph has an odd cycle.
std::optional<std::vector<int>> two_coloring(const Graph& g);

VertexList sorted_unique(VertexList v);
VertexList set_difference(std::span<const Vertex> a, std::span<const Vertex> b);
VertexList set_intersection(std::span<const Vertex> a, std::span<const Vertex> b);

}  // namespace cyclecut
