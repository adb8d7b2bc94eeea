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
#include <string>
#include <utility>
#include <vector>

#include "cyclecut/decomposition.hpp"
#include "cyclecut/graph.hpp"

namespace cyclecut {

enum class HamMode { Paper, Direct, Auto };

std::string_view to_string(HamMode mode);
HamMode parse_ham_mode(std::string_view text);

struct HamRequest {
  Cluster cluster;
  VertexList removed;  // W
  Vertex x = -1;
  Vertex y = -1;
};

// Throws InvalidArgument when the request breaks its invariants.
void validate_request(const Graph& g, const HamRequest& req);

// Sides of a bipartite working set. Only X-Y edges are used when given.
struct Sides {
  VertexList x;
  VertexList y;
};

// Directed cycles in arc order: {v} is a loop, {u, v} a 2-cycle.
struct CycleFactor {
  std::vector<std::vector<Vertex>> cycles;

  std::size_t num_vertices() const;
};

// Cycle factor with the arc into `root` removed. Arcs are stored as
// successor/predecessor arrays over the base graph's vertex ids.
class Prefactor {
 public:
  Prefactor(const CycleFactor& factor, Vertex root, int n);

  Vertex root() const noexcept { return root_; }
  Vertex pivot() const noexcept { return pivot_; }
  Vertex successor(Vertex v) const { return succ_[static_cast<std::size_t>(v)]; }
  Vertex predecessor(Vertex v) const { return pred_[static_cast<std::size_t>(v)]; }
  // root .. pivot
  Path root_path() const;
  const VertexList& new_heads() const noexcept { return new_heads_; }

  // x is adjacent to the pivot (in `g`, restricted by `sides`), is not the
  // root, is not the head of an arc added by an earlier rotation and is
  // not among the first or last `guard` vertices of the root path.
  bool is_valid_rotation(const Graph& g, Vertex x, int guard, const std::optional<Sides>& sides = std::nullopt) const;
  // Replaces the arc pred(x) -> x with pivot -> x; pred(x) becomes the pivot.
  void rotate(Vertex x);
  // Adds the arc pivot -> root.
  CycleFactor close() const;
  bool well_formed() const;

 private:
  std::vector<Vertex> succ_;
  std::vector<Vertex> pred_;
  std::vector<char> member_;
  VertexList new_heads_;
  Vertex root_ = -1;
  Vertex pivot_ = -1;
};

// Breadth-first rotation tree recorded by reduce_cycle_factor.
struct RotationTrace {
  struct Tree {
    Vertex root = -1;
    std::vector<std::pair<Vertex, Vertex>> edges;  // pivot -> new pivot
    Vertex closed_at = -1;
  };
  std::vector<Tree> trees;
};

std::string rotation_trace_dot(const RotationTrace& trace);

VertexList select_reservoir(const Graph& g, std::span<const Vertex> working, std::span<const Vertex> excluded,
                            std::uint64_t seed, const std::optional<Sides>& sides = std::nullopt);

// Loops, or the 2-cycles of a perfect matching when sides are given.
// Throws NoPerfectMatching with a Hall violator in detail()["hall_set"].
CycleFactor initial_cycle_factor(const Graph& g, std::span<const Vertex> working,
                                 const std::optional<Sides>& sides = std::nullopt);

// Merges components smaller than min_size through prefactor rotations.
// Throws RotationExhausted.
CycleFactor reduce_cycle_factor(const Graph& g, const CycleFactor& factor, int min_size,
                                const std::optional<Sides>& sides = std::nullopt, RotationTrace* trace = nullptr);

// Joins Q, the factor's cycles (opened into paths) and the ends through
// reservoir paths, then absorbs unused reservoir vertices. Returns a path
// from x_star to y_star covering `working`.
Path connect_and_absorb(const Graph& g, std::span<const Vertex> working, const CycleFactor& factor,
                        std::span<const Vertex> reservoir, const Path& q, Vertex x_star, Vertex y_star,
                        const std::optional<Sides>& sides = std::nullopt, std::uint64_t seed = 0);

// Subset DP; nullopt when no Hamilton path exists. |working| <= 24.
std::optional<Path> exact_ham_path(const Graph& g, std::span<const Vertex> working, Vertex x, Vertex y,
                                   const std::optional<Sides>& sides = std::nullopt);

// Rotation-extension with a fixed start, then bounded backtracking.
std::optional<Path> posa_ham_path(const Graph& g, std::span<const Vertex> working, Vertex x, Vertex y,
                                  const std::optional<Sides>& sides, std::uint64_t seed, long budget = 200000);

struct HamOptions {
  HamMode mode = HamMode::Auto;
  int exact_limit = 18;
  long posa_budget = 200000;
};

enum class HamRoute { Exact, Posa, Paper };

struct HamResult {
  Path path;
  HamRoute route = HamRoute::Exact;
  bool fell_back_to_direct = false;
};

HamResult solve_ham_path(const Graph& g, const HamRequest& req, std::uint64_t seed, const HamOptions& options = {});

// Throws HamFailed with the longest path found in detail()["best_path"].
Path ham_path(const Graph& g, const HamRequest& req, HamMode mode, std::uint64_t seed);

// True when `p` visits exactly `working`, once each, along edges of G,
// from x to y.
bool is_hamilton_path(const Graph& g, std::span<const Vertex> working, const Path& p, Vertex x, Vertex y);

}  // namespace cyclecut
