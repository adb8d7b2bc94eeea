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

#include "cyclecut/generators.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "cyclecut/error.hpp"

namespace cyclecut {

Graph gen_clique_union(const std::vector<int>& sizes) {
  if (sizes.empty()) throw Error(ErrorCode::SizeTooSmall, "clique union needs at least one clique");
  std::vector<Edge> edges;
  int offset = 0;
  for (int size : sizes) {
    if (size < 2) throw Error(ErrorCode::SizeTooSmall, "clique size " + std::to_string(size) + " < 2");
    for (int i = 0; i < size; ++i) {
      for (int j = i + 1; j < size; ++j) edges.emplace_back(offset + i, offset + j);
    }
    offset += size;
  }
  return Graph::from_edges(offset, edges);
}

Graph gen_bipartite_union(int k, int d) {
  if (k < 1 || d < 1) throw Error(ErrorCode::InvalidArgument, "biclique union needs k >= 1 and d >= 1");
  std::vector<Edge> edges;
  for (int j = 0; j < k; ++j) {
    const int base = 2 * d * j;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) edges.emplace_back(base + a, base + d + b);
    }
  }
  return Graph::from_edges(2 * d * k, edges);
}

namespace {

struct MultiEdgeCheck {
  explicit MultiEdgeCheck(int n) : n(n), seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {}
  int n;
  std::vector<char> seen;
  char& at(int u, int v) { return seen[static_cast<std::size_t>(std::min(u, v)) * static_cast<std::size_t>(n) + static_cast<std::size_t>(std::max(u, v))]; }
};

bool simple(int n, const std::vector<Edge>& edges) {
  MultiEdgeCheck check(n);
  for (auto [u, v] : edges) {
    if (u == v || check.at(u, v)) return false;
    check.at(u, v) = 1;
  }
  return true;
}

std::vector<Edge> pairing(int n, int d, std::mt19937_64& rng) {
  std::vector<int> points;
  points.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < d; ++i) points.push_back(v);
  }
  std::shuffle(points.begin(), points.end(), rng);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < points.size(); i += 2) edges.emplace_back(points[i], points[i + 1]);
  return edges;
}

// Double-edge swaps until no loop or repeated edge remains.
bool repair(int n, std::vector<Edge>& edges, std::mt19937_64& rng) {
  std::vector<int> mult(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  auto cell = [&](int u, int v) -> int& {
    return mult[static_cast<std::size_t>(std::min(u, v)) * static_cast<std::size_t>(n) + static_cast<std::size_t>(std::max(u, v))];
  };
  for (auto [u, v] : edges) ++cell(u, v);
  auto bad = [&](const Edge& e) { return e.first == e.second || cell(e.first, e.second) > 1; };
  std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
  const long budget = 200L * static_cast<long>(edges.size()) + 10000;
  for (long step = 0; step < budget; ++step) {
    std::size_t i = 0;
    while (i < edges.size() && !bad(edges[i])) ++i;
    if (i == edges.size()) return true;
    const std::size_t j = pick(rng);
    if (j == i) continue;
    auto [a, b] = edges[i];
    auto [c, e] = edges[j];
    if (rng() & 1U) std::swap(c, e);
    // (a,b),(c,e) -> (a,c),(b,e)
    if (a == c || b == e) continue;
    if (cell(a, c) > 0 || cell(b, e) > 0) continue;
    if (std::min(a, c) == std::min(b, e) && std::max(a, c) == std::max(b, e)) continue;
    --cell(a, b);
    --cell(c, e);
    ++cell(a, c);
    ++cell(b, e);
    edges[i] = {a, c};
    edges[j] = {b, e};
  }
  return false;
}

}  // namespace

Graph gen_random_regular(int n, int d, std::uint64_t seed) {
  if (n < 2 || d < 1 || d >= n) {
    throw Error(ErrorCode::InvalidArgument, "random regular graph needs 1 <= d < n", {{"n", n}, {"d", d}});
  }
  if ((static_cast<long>(n) * d) % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "n * d must be even", {{"n", n}, {"d", d}});
  }
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (int attempt = 0; attempt < 10 * n; ++attempt) {
    edges = pairing(n, d, rng);
    if (simple(n, edges)) break;
  }
  if (!simple(n, edges) && !repair(n, edges, rng)) {
    throw Error(ErrorCode::GenerationFailed, "could not produce a simple regular graph", {{"n", n}, {"d", d}});
  }
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  return Graph::from_edges(n, edges);
}

Graph gen_petersen() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    edges.emplace_back(i, i + 5);
  }
  return Graph::from_edges(10, edges);
}

Graph gen_cycle(int n) {
  if (n < 3) throw Error(ErrorCode::SizeTooSmall, "cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, edges);
}

}  // namespace cyclecut
