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
#include <span>
#include <vector>

#include "cyclecut/balancing.hpp"
#include "cyclecut/decomposition.hpp"
#include "cyclecut/graph.hpp"

namespace cyclecut {

struct LinearForest {
  std::vector<Path> paths;

  VertexList vertices() const;
  VertexList leaves() const;    // path ends
  VertexList interior() const;  // non-end path vertices
  bool empty() const noexcept { return paths.empty(); }
};

// Base graph of the lifted matching split into maximal paths, each read
// from its smaller end. Throws CycleDetected on a cycle or a vertex of
// degree above two.
LinearForest pull_back(const BalancingMatching& m, const LiftGraph& lift);

// Shortest x-y path in G[A \ forbidden]; throws Disconnected. With a
// nonempty side_x only edges between side_x and the rest of A are used.
Path short_connect(const Graph& g, std::span<const Vertex> a, Vertex x, Vertex y, std::span<const Vertex> forbidden,
                   const Rational& zeta = Rational(1, 5), std::span<const Vertex> side_x = {});

LinearForest merge_leaves(const Graph& g, const Decomposition& dec, const LinearForest& f);
LinearForest fix_parity(const Graph& g, const Decomposition& dec, const LinearForest& f);

struct ForestReport {
  std::vector<int> leaves;    // per cluster
  std::vector<int> residual;  // per cluster: |X \ V(H)| - |Y \ V(H)|, 0 for far clusters
  int size = 0;               // |V(H)|
  int h0_size = 0;            // |V(H_0)| before merging
  bool a = false;             // |V(H)| <= xi n
  bool b = false;             // every path has an edge
  bool c = false;             // 0 or 2 leaves per cluster
  bool d = false;             // near clusters: one leaf per side
  bool e = false;             // near clusters: residual sides balanced
  bool size_bound = false;    // |V(H)| <= |V(H_0)| (3/(2 zeta) + 1) + r

  bool all() const noexcept { return a && b && c && d && e; }
};

ForestReport make_forest_report(const Graph& g, const Decomposition& dec, const LinearForest& f,
                                const Rational& xi = Rational(1, 10), int h0_size = 0);

struct ForestOptions {
  Rational xi{1, 10};
  BalanceOptions balance;
};

struct ForestResult {
  LinearForest forest;
  ForestReport report;
  BalanceResult balance;
  int retries = 0;
};

ForestResult build_balancing_forest(const Graph& g, const Decomposition& dec, std::uint64_t seed,
                                    const ForestOptions& options = {});

}  // namespace cyclecut
