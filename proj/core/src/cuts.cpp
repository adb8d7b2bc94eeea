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

#include "cyclecut/cuts.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <random>

#include "cyclecut/error.hpp"

namespace cyclecut {

Rational cut_sparsity(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::EmptySide, "cut side is empty");
  const auto mask = make_mask(g.num_vertices(), x);
  for (Vertex v : y) {
    if (mask[static_cast<std::size_t>(v)]) throw Error(ErrorCode::InvalidArgument, "cut sides overlap");
  }
  const auto cross = count_edges_between(g, x, y);
  return Rational(cross, static_cast<std::int64_t>(x.size()) * static_cast<std::int64_t>(y.size()));
}

namespace {

Bipartition from_sides(std::span<const Vertex> a, const std::vector<char>& in_y, std::int64_t uncut, bool exact) {
  Bipartition out;
  for (std::size_t i = 0; i < a.size(); ++i) (in_y[i] ? out.y : out.x).push_back(a[i]);
  out.uncut = uncut;
  out.exact = exact;
  return out;
}

Bipartition exhaustive(const Graph& g, std::span<const Vertex> a) {
  const int m = static_cast<int>(a.size());
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(m), 0);
  std::int64_t edges = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && g.has_edge(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)])) {
        adj[static_cast<std::size_t>(i)] |= 1U << j;
        if (i < j) ++edges;
      }
    }
  }
  const std::uint32_t full = (m == 32) ? ~0U : ((1U << m) - 1U);
  std::uint32_t side = 0;  // bit set: vertex in Y; vertex 0 stays in X
  std::int64_t uncut = edges;
  std::int64_t best = -1;
  std::uint32_t best_side = 0;
  const std::uint64_t steps = std::uint64_t{1} << (m - 1);
  for (std::uint64_t k = 1; k < steps; ++k) {
    const int bit = std::countr_zero(k) + 1;
    const std::uint32_t b = 1U << bit;
    const std::uint32_t own = (side & b) ? side : (~side & full);
    const int same = std::popcount(adj[static_cast<std::size_t>(bit)] & own);
    const int other = std::popcount(adj[static_cast<std::size_t>(bit)]) - same;
    uncut += other - same;
    side ^= b;
    if (best < 0 || uncut < best) {
      best = uncut;
      best_side = side;
    }
  }
  std::vector<char> in_y(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) in_y[static_cast<std::size_t>(i)] = (best_side >> i) & 1U;
  return from_sides(a, in_y, best, true);
}

// Single-vertex moves until every vertex has at least as many neighbours
// across as on its own side.
std::int64_t local_search(const std::vector<std::vector<int>>& adj, std::vector<char>& in_y) {
  const int m = static_cast<int>(adj.size());
  int count_y = static_cast<int>(std::count(in_y.begin(), in_y.end(), 1));
  bool moved = true;
  while (moved) {
    moved = false;
    for (int v = 0; v < m; ++v) {
      int same = 0;
      for (int u : adj[static_cast<std::size_t>(v)]) same += in_y[static_cast<std::size_t>(u)] == in_y[static_cast<std::size_t>(v)];
      const int other = static_cast<int>(adj[static_cast<std::size_t>(v)].size()) - same;
      if (same <= other) continue;
      const bool from_y = in_y[static_cast<std::size_t>(v)] != 0;
      if ((from_y && count_y == 1) || (!from_y && m - count_y == 1)) continue;
      in_y[static_cast<std::size_t>(v)] = from_y ? 0 : 1;
      count_y += from_y ? -1 : 1;
      moved = true;
    }
  }
  std::int64_t uncut = 0;
  for (int v = 0; v < m; ++v) {
    for (int u : adj[static_cast<std::size_t>(v)]) {
      if (u > v && in_y[static_cast<std::size_t>(u)] == in_y[static_cast<std::size_t>(v)]) ++uncut;
    }
  }
  return uncut;
}

void ensure_nonempty(std::vector<char>& in_y) {
  const auto ys = std::count(in_y.begin(), in_y.end(), 1);
  if (ys == 0) in_y.back() = 1;
  if (ys == static_cast<long>(in_y.size())) in_y.front() = 0;
}

}  // namespace

Bipartition max_cut_bipartition(const Graph& g, std::span<const Vertex> a, int exact_limit) {
  if (a.size() < 2) throw Error(ErrorCode::InvalidArgument, "max cut needs at least two vertices");
  VertexList sorted(a.begin(), a.end());
  std::sort(sorted.begin(), sorted.end());
  const int m = static_cast<int>(sorted.size());
  if (m <= std::min(exact_limit, 30)) return exhaustive(g, sorted);

  std::vector<int> local(static_cast<std::size_t>(g.num_vertices()), -1);
  for (int i = 0; i < m; ++i) local[static_cast<std::size_t>(sorted[static_cast<std::size_t>(i)])] = i;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    for (Vertex u : g.neighbors(sorted[static_cast<std::size_t>(i)])) {
      if (local[static_cast<std::size_t>(u)] >= 0) adj[static_cast<std::size_t>(i)].push_back(local[static_cast<std::size_t>(u)]);
    }
  }

  std::vector<std::vector<char>> starts;
  {
    // greedy: each vertex joins the side holding fewer of its placed neighbours
    std::vector<char> side(static_cast<std::size_t>(m), 0);
    std::vector<char> placed(static_cast<std::size_t>(m), 0);
    for (int v = 0; v < m; ++v) {
      int in_x = 0;
      int in_y = 0;
      for (int u : adj[static_cast<std::size_t>(v)]) {
        if (placed[static_cast<std::size_t>(u)]) (side[static_cast<std::size_t>(u)] ? in_y : in_x)++;
      }
      side[static_cast<std::size_t>(v)] = in_x > in_y ? 1 : 0;
      placed[static_cast<std::size_t>(v)] = 1;
    }
    starts.push_back(side);
  }
  {
    // BFS layering parity
    std::vector<char> side(static_cast<std::size_t>(m), 0);
    std::vector<char> seen(static_cast<std::size_t>(m), 0);
    for (int s = 0; s < m; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      seen[static_cast<std::size_t>(s)] = 1;
      std::queue<int> queue;
      queue.push(s);
      while (!queue.empty()) {
        const int v = queue.front();
        queue.pop();
        for (int u : adj[static_cast<std::size_t>(v)]) {
          if (!seen[static_cast<std::size_t>(u)]) {
            seen[static_cast<std::size_t>(u)] = 1;
            side[static_cast<std::size_t>(u)] = side[static_cast<std::size_t>(v)] ? 0 : 1;
            queue.push(u);
          }
        }
      }
    }
    starts.push_back(side);
  }
  std::mt19937_64 rng(0x5eed);
  for (int r = 0; r < 6; ++r) {
    std::vector<char> side(static_cast<std::size_t>(m), 0);
    for (auto& s : side) s = static_cast<char>(rng() & 1U);
    starts.push_back(side);
  }

  std::int64_t best = -1;
  std::vector<char> best_side;
  for (auto& side : starts) {
    ensure_nonempty(side);
    const auto uncut = local_search(adj, side);
    if (best < 0 || uncut < best) {
      best = uncut;
      best_side = side;
    }
  }
  return from_sides(sorted, best_side, best, false);
}

}  // namespace cyclecut
