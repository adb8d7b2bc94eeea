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
#include <random>
#include <span>
#include <vector>

#include "cyclecut/graph.hpp"
#include "cyclecut/hamiltonicity.hpp"

namespace cyclecut::detail {

// G[working] reindexed to 0..m-1. With sides, only X-Y edges are kept.
class LocalGraph {
 public:
  LocalGraph(const Graph& g, std::span<const Vertex> working, const std::optional<Sides>& sides = std::nullopt);

  int size() const noexcept { return static_cast<int>(verts_.size()); }
  Vertex global(int i) const { return verts_[static_cast<std::size_t>(i)]; }
  int local(Vertex v) const { return index_[static_cast<std::size_t>(v)]; }
  bool contains(Vertex v) const { return v >= 0 && v < static_cast<Vertex>(index_.size()) && local(v) >= 0; }
  const std::vector<int>& adj(int i) const { return adj_[static_cast<std::size_t>(i)]; }
  bool has(int i, int j) const {
    return (bits_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j) / 64] >> (j % 64)) & 1U;
  }
  int side(int i) const { return side_[static_cast<std::size_t>(i)]; }  // 0 = X, 1 = Y, -1 without sides

  Path to_global(const std::vector<int>& p) const;

 private:
  VertexList verts_;
  std::vector<int> index_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint64_t> bits_;
  std::size_t words_ = 0;
  std::vector<int> side_;
};

// Subset DP over local ids; m <= 24.
std::optional<std::vector<int>> exact_local(const LocalGraph& lg, int x, int y, std::vector<int>* best = nullptr);

// Rotation-extension from `start` (a prefix beginning at x) towards a
// Hamilton path ending at y. Decrements `budget` per step.
std::optional<std::vector<int>> posa_local(const LocalGraph& lg, int x, int y, std::vector<int> start,
                                           std::mt19937_64& rng, long& budget, std::vector<int>* best = nullptr);

// Depth-first search with fewest-options ordering.
std::optional<std::vector<int>> backtrack_local(const LocalGraph& lg, int x, int y, long& budget,
                                                std::vector<int>* best = nullptr);

// Reservoir, cycle factor, rotations and connect-and-absorb.
Path reservoir_ham_path(const Graph& g, std::span<const Vertex> working, Vertex x, Vertex y,
                    const std::optional<Sides>& sides, std::uint64_t seed);

}  // namespace cyclecut::detail
