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

#include "cyclecut/graph.hpp"
#include "cyclecut/rational.hpp"

namespace cyclecut {

struct Cut {
  VertexList x;
  VertexList y;
  Rational sparsity;
};

// e(X, Y) / (|X| |Y|). Throws EmptySide when either side is empty and
// InvalidArgument when the sides overlap.
Rational cut_sparsity(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y);

struct Bipartition {
  VertexList x;
  VertexList y;
  std::int64_t uncut = 0;  // edges of G[A] inside X or inside Y
  bool exact = false;      // true when found by exhaustive search
};

// Bipartition of A maximizing crossing edges. Exhaustive for
// |A| <= exact_limit, otherwise multi-start local search. The result is
// move-stable: every vertex has at least as many neighbours across as on
// its own side (unless moving it would empty a side). Requires |A| >= 2.
Bipartition max_cut_bipartition(const Graph& g, std::span<const Vertex> a, int exact_limit = 20);

}  // namespace cyclecut
