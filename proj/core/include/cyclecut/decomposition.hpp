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

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cyclecut/cuts.hpp"
#include "cyclecut/graph.hpp"
#include "cyclecut/rational.hpp"

namespace cyclecut {

struct ParameterLadder {
  Rational eta{1, 100};
  Rational beta{1, 50};
  Rational gamma{1, 10};
  Rational zeta{1, 5};
  Rational delta{1, 4};  // absolute; defaults() sets it to c / 4
  int r_max = 2;

  static ParameterLadder defaults(const RegularityInfo& info);
  // Throws InvalidArgument unless 0 < eta < beta < gamma < zeta < 1,
  // 0 < delta < 1 and r_max >= 1.
  void validate() const;
};

enum class ClusterKind { FarBipartite, NearBipartite };

struct Cluster {
  VertexList vertices;
  ClusterKind kind = ClusterKind::FarBipartite;
  // Best bipartition found. Meaningful as sides only for near clusters.
  VertexList x;
  VertexList y;
  std::int64_t uncut = 0;

  bool is_near() const noexcept { return kind == ClusterKind::NearBipartite; }
};

struct Decomposition {
  int n = 0;
  std::vector<Cluster> clusters;
  ParameterLadder ladder;
  // The (beta, gamma) gap chosen by the classification ladder.
  Rational beta;
  Rational gamma;

  int num_near() const;
  // cluster index of every vertex
  std::vector<int> cluster_of() const;
};

// Best cut of G[A] found by component split, Fiedler sweep, local search
// and (for small A) exhaustive search; returned when its sparsity is at
// most threshold. Requires |A| >= 2.
std::optional<Cut> find_sparse_cut(const Graph& g, std::span<const Vertex> a, const Rational& threshold);

// Sparsest cut the search can find, regardless of any threshold.
Cut best_sparse_cut(const Graph& g, std::span<const Vertex> a);

std::pair<VertexList, VertexList> refine_split(const Graph& g, std::span<const Vertex> a1,
                                               std::span<const Vertex> a2, const Rational& eta_i,
                                               const Rational& mindeg_target);

// Near when uncut <= beta |A|^2, far when uncut >= gamma |A|^2, otherwise
// ClassificationAmbiguous.
Cluster classify_cluster(const Graph& g, std::span<const Vertex> a, const Rational& beta, const Rational& gamma);

struct DecomposeOptions {
  // Per-vertex side (0/1). When set every cluster is near-bipartite with
  // the sides induced by this colouring.
  std::optional<std::vector<int>> fixed_sides;
  // Number of gaps in the beta..gamma ladder; 0 means (part count + 1),
  // which always leaves one gap empty.
  int ladder_gaps = 0;
};

Decomposition decompose(const Graph& g, const RegularityInfo& info, const ParameterLadder& ladder,
                        const DecomposeOptions& options = {});

struct DecompositionCheck {
  bool partition = false;
  bool count_within_cap = false;
  bool cross_edges_small = false;  // cross edges <= eta n^2
  bool min_degree = false;         // internal degree >= delta n
  bool no_sparse_cut = false;      // find_sparse_cut(cluster, zeta) is none
  bool near_sides_valid = false;
  std::int64_t cross_edges = 0;
  int min_internal_degree = 0;

  bool all() const {
    return partition && count_within_cap && cross_edges_small && min_degree && no_sparse_cut && near_sides_valid;
  }
};

DecompositionCheck check_decomposition(const Graph& g, const Decomposition& dec);

}  // namespace cyclecut
