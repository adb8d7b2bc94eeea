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

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "cyclecut/decomposition.hpp"
#include "cyclecut/generators.hpp"
#include "cyclecut/graph.hpp"
#include "cyclecut/hamiltonicity.hpp"

namespace cyclecut::testing {

struct Planted {
  Graph g{0};
  Decomposition dec;
};

inline VertexList range(int lo, int hi) {
  VertexList v(static_cast<std::size_t>(hi - lo));
  std::iota(v.begin(), v.end(), lo);
  return v;
}

// Two near-bipartite clusters with |X_i| = a + t and |Y_i| = a. X_i is
// complete to Y_i and a random t-regular graph on X_1 u X_2 tops the X
// vertices up to degree a + t, so every clump starts t out of balance.
inline Planted planted_two_near(int a, int t, std::uint64_t seed) {
  const int sx = a + t;
  const VertexList x1 = range(0, sx);
  const VertexList y1 = range(sx, sx + a);
  const VertexList x2 = range(sx + a, 2 * sx + a);
  const VertexList y2 = range(2 * sx + a, 2 * sx + 2 * a);
  const int n = 2 * sx + 2 * a;
  std::vector<Edge> edges;
  for (const auto& [xs, ys] : {std::pair{x1, y1}, std::pair{x2, y2}}) {
    for (Vertex u : xs) {
      for (Vertex v : ys) edges.emplace_back(u, v);
    }
  }
  VertexList xs = x1;
  xs.insert(xs.end(), x2.begin(), x2.end());
  const Graph extra = gen_random_regular(static_cast<int>(xs.size()), t, seed);
  for (auto [u, v] : extra.edges()) edges.emplace_back(xs[static_cast<std::size_t>(u)], xs[static_cast<std::size_t>(v)]);

  Planted out;
  out.g = Graph::from_edges(n, edges);
  const RegularityInfo info = validate_regular(out.g);
  out.dec.n = n;
  out.dec.ladder = ParameterLadder::defaults(info);
  out.dec.beta = out.dec.ladder.beta;
  out.dec.gamma = out.dec.ladder.gamma;
  for (const auto& [cx, cy] : {std::pair{x1, y1}, std::pair{x2, y2}}) {
    Cluster c;
    c.kind = ClusterKind::NearBipartite;
    c.x = cx;
    c.y = cy;
    c.vertices = sorted_unique([&] {
      VertexList all = cx;
      all.insert(all.end(), cy.begin(), cy.end());
      return all;
    }());
    c.uncut = count_edges_within(out.g, cx) + count_edges_within(out.g, cy);
    out.dec.clusters.push_back(std::move(c));
  }
  return out;
}

// Single far cluster holding every vertex.
inline Cluster whole_cluster(const Graph& g) {
  Cluster c;
  c.vertices = range(0, g.num_vertices());
  c.kind = ClusterKind::FarBipartite;
  return c;
}

// Random request on a far cluster: a few removed vertices and two ends.
inline HamRequest random_request(const Graph& g, std::mt19937_64& rng, int max_working) {
  HamRequest req;
  req.cluster = whole_cluster(g);
  VertexList order = req.cluster.vertices;
  std::shuffle(order.begin(), order.end(), rng);
  const int n = g.num_vertices();
  const int keep = std::min(n, std::max(2, max_working - static_cast<int>(rng() % 3)));
  req.removed.assign(order.begin() + keep, order.end());
  std::sort(req.removed.begin(), req.removed.end());
  req.x = order[0];
  req.y = order[1];
  return req;
}

inline VertexList working_of(const HamRequest& req) {
  return set_difference(sorted_unique(req.cluster.vertices), sorted_unique(req.removed));
}

}  // namespace cyclecut::testing
