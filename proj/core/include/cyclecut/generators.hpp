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
#include <vector>

#include "cyclecut/graph.hpp"

namespace cyclecut {

// Disjoint cliques; clique j occupies a contiguous block of vertices.
Graph gen_clique_union(const std::vector<int>& sizes);

// k disjoint copies of K_{d,d}. Copy j has sides
// [2dj, 2dj+d) and [2dj+d, 2dj+2d).
Graph gen_bipartite_union(int k, int d);

// Uniform-ish random d-regular simple graph: pairing model with restarts,
// then double-edge swaps to repair loops and multi-edges. Deterministic
// for a given seed. Requires n*d even and d < n.
Graph gen_random_regular(int n, int d, std::uint64_t seed);

// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
Graph gen_petersen();

Graph gen_cycle(int n);

}  // namespace cyclecut
