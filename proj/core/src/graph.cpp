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

#include "cyclecut/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "cyclecut/error.hpp"

namespace cyclecut {

Graph::Graph(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative vertex count");
  n_ = n;
  words_ = (static_cast<std::size_t>(n) + 63) / 64;
  adj_.assign(static_cast<std::size_t>(n), {});
  bits_.assign(words_ * static_cast<std::size_t>(n), 0);
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (auto [u, v] : edges) {
    if (!g.contains(u) || !g.contains(v)) {
      throw Error(ErrorCode::InvalidArgument,
                  "edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range for n = " + std::to_string(n));
    }
    if (u == v) throw Error(ErrorCode::InvalidArgument, "self-loop at vertex " + std::to_string(u));
    if (g.has_edge(u, v)) {
      throw Error(ErrorCode::InvalidArgument, "repeated edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    g.adj_[static_cast<std::size_t>(u)].push_back(v);
    g.adj_[static_cast<std::size_t>(v)].push_back(u);
    g.bits_[static_cast<std::size_t>(u) * g.words_ + static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
    g.bits_[static_cast<std::size_t>(v) * g.words_ + static_cast<std::size_t>(u) / 64] |= std::uint64_t{1} << (u % 64);
    ++g.m_;
  }
  for (auto& list : g.adj_) std::sort(list.begin(), list.end());
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v)) return false;
  return (bits_[static_cast<std::size_t>(u) * words_ + static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1U;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

RegularityInfo validate_regular(const Graph& g) {
  const int n = g.num_vertices();
  if (n < 2) throw Error(ErrorCode::SizeTooSmall, "graph needs at least two vertices", {{"n", n}});
  const int d = g.degree(0);
  for (Vertex v = 1; v < n; ++v) {
    if (g.degree(v) != d) {
      throw Error(ErrorCode::NotRegular,
                  "vertex 0 has degree " + std::to_string(d) + " but vertex " + std::to_string(v) + " has degree " +
                      std::to_string(g.degree(v)),
                  {{"u", 0}, {"degree_u", d}, {"v", v}, {"degree_v", g.degree(v)}});
    }
  }
  if (d == 0) throw Error(ErrorCode::SizeTooSmall, "graph has no edges", {{"n", n}});
  return RegularityInfo{n, d, Rational(d, n)};
}

std::vector<char> make_mask(int n, std::span<const Vertex> set) {
  std::vector<char> mask(static_cast<std::size_t>(n), 0);
  for (Vertex v : set) mask[static_cast<std::size_t>(v)] = 1;
  return mask;
}

int count_neighbors_in(const Graph& g, Vertex v, const std::vector<char>& mask) {
  int count = 0;
  for (Vertex u : g.neighbors(v)) count += mask[static_cast<std::size_t>(u)] != 0;
  return count;
}

std::int64_t count_edges_between(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y) {
  const auto mask = make_mask(g.num_vertices(), y);
  std::int64_t total = 0;
  for (Vertex v : x) total += count_neighbors_in(g, v, mask);
  return total;
}

std::int64_t count_edges_within(const Graph& g, std::span<const Vertex> set) {
  return count_edges_between(g, set, set) / 2;
}

std::vector<VertexList> components(const Graph& g, std::span<const Vertex> set) {
  const auto in_set = make_mask(g.num_vertices(), set);
  std::vector<char> seen(static_cast<std::size_t>(g.num_vertices()), 0);
  VertexList order(set.begin(), set.end());
  std::sort(order.begin(), order.end());
  std::vector<VertexList> out;
  for (Vertex s : order) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    VertexList comp{s};
    seen[static_cast<std::size_t>(s)] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (Vertex u : g.neighbors(comp[i])) {
        if (in_set[static_cast<std::size_t>(u)] && !seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = 1;
          comp.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<VertexList> components(const Graph& g) {
  VertexList all(static_cast<std::size_t>(g.num_vertices()));
  std::iota(all.begin(), all.end(), 0);
  return components(g, all);
}

std::optional<std::vector<int>> two_coloring(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  for (Vertex s = 0; s < n; ++s) {
    if (color[static_cast<std::size_t>(s)] != -1) continue;
    color[static_cast<std::size_t>(s)] = 0;
    std::queue<Vertex> queue;
    queue.push(s);
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop();
      for (Vertex u : g.neighbors(v)) {
        if (color[static_cast<std::size_t>(u)] == -1) {
          color[static_cast<std::size_t>(u)] = 1 - color[static_cast<std::size_t>(v)];
          queue.push(u);
        } else if (color[static_cast<std::size_t>(u)] == color[static_cast<std::size_t>(v)]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

VertexList sorted_unique(VertexList v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

VertexList set_difference(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexList sa(a.begin(), a.end());
  VertexList sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  VertexList out;
  std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
  return out;
}

VertexList set_intersection(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexList sa(a.begin(), a.end());
  VertexList sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  VertexList out;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
  return out;
}

}  // namespace cyclecut
