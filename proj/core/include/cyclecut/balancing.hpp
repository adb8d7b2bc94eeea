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
#include <functional>
#include <span>
#include <vector>

#include "cyclecut/decomposition.hpp"
#include "cyclecut/graph.hpp"
#include "cyclecut/rational.hpp"

namespace cyclecut {

// Lift vertex ids: v(1) is v, v(2) is n + v.
inline int lift_id(Vertex v, int copy, int n) { return copy == 1 ? v : n + v; }
inline Vertex lift_base(int id, int n) { return id < n ? id : id - n; }
inline int lift_copy(int id, int n) { return id < n ? 1 : 2; }

struct Clump {
  std::vector<int> bottom;  // B_i, lift ids in V(1)
  std::vector<int> top;     // T_i, lift ids in V(2)
  int cluster = -1;
};

// Bipartite double cover of G with the clump partition induced by a
// decomposition. Edges are implicit: u(1) ~ v(2) iff uv is an edge of G.
class LiftGraph {
 public:
  LiftGraph(const Graph& base, std::vector<Clump> clumps);

  const Graph& base() const noexcept { return *base_; }
  int num_base() const noexcept { return base_->num_vertices(); }
  int num_vertices() const noexcept { return 2 * base_->num_vertices(); }
  const std::vector<Clump>& clumps() const noexcept { return clumps_; }
  int num_clumps() const noexcept { return static_cast<int>(clumps_.size()); }
  int clump_of(int lift_vertex) const { return clump_of_[static_cast<std::size_t>(lift_vertex)]; }
  bool has_edge(int a, int b) const;
  std::vector<int> neighbors(int lift_vertex) const;

 private:
  const Graph* base_;
  std::vector<Clump> clumps_;
  std::vector<int> clump_of_;
};

LiftGraph build_lift(const Graph& g, const Decomposition& dec);
int clump_imbalance(const LiftGraph& lift, int i);
int total_imbalance(const LiftGraph& lift);
// Number of lift edges with ends in different clumps.
std::int64_t cross_clump_edges(const LiftGraph& lift);

// Base pair (u, v) stands for the lift edge u(1) v(2).
using LiftEdge = std::pair<Vertex, Vertex>;

struct OrderedFilter {
  std::vector<int> sigma;  // sigma[v] = position of v
  std::vector<LiftEdge> edges;
};

OrderedFilter build_filtered(const LiftGraph& lift, std::span<const int> sigma);

// Directed network with arc capacities. Vertex capacities are modelled by
// in/out node pairs.
class FlowNetwork {
 public:
  struct Arc {
    int from = 0;
    int to = 0;
    Rational capacity;
  };

  int add_node();
  int add_arc(int from, int to, const Rational& capacity);
  int num_nodes() const noexcept { return nodes_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  int source = -1;
  int sink = -1;
  // Arc index carrying each filter edge (parallel to filter_edges).
  std::vector<int> edge_arcs;
  std::vector<LiftEdge> filter_edges;
  // a[i][j] = e(B_i, T_j) / d for i != j.
  std::vector<std::vector<Rational>> a;
  Rational total_a;

 private:
  int nodes_ = 0;
  std::vector<Arc> arcs_;
};

FlowNetwork build_network(const OrderedFilter& filter, const LiftGraph& lift, const RegularityInfo& info);

struct FractionalMatching {
  std::vector<LiftEdge> edges;
  std::vector<Rational> weights;
};

struct FlowResult {
  Rational value;
  FractionalMatching matching;
  std::vector<Rational> arc_flow;
};

// Edmonds-Karp over exact rationals.
FlowResult max_flow(const FlowNetwork& net);

// Weight w(v) of every lift vertex.
std::vector<Rational> vertex_weights(const FractionalMatching& fm, const LiftGraph& lift);
// (|T_i| - w(T_i)) - (|B_i| - w(B_i)); disb is its absolute value.
Rational signed_disb(const FractionalMatching& fm, const LiftGraph& lift, int i);
Rational total_disb(const FractionalMatching& fm, const LiftGraph& lift);

struct RoundingStep {
  bool cycle = false;
  Rational lambda;
  std::vector<Rational> disb_before;  // signed, per clump
  std::vector<Rational> disb_after;
};
using RoundingObserver = std::function<void(const RoundingStep&)>;

// Rounds an almost-balancing fractional matching (total disb < 1) to an
// integral one with total disb 0. Throws NotAlmostBalancing otherwise.
FractionalMatching round_matching(const FractionalMatching& fm, const LiftGraph& lift,
                                  const RoundingObserver& observer = {});

struct BalancingMatching {
  std::vector<LiftEdge> edges;
};

bool balances_all(const BalancingMatching& m, const LiftGraph& lift);
// (sum of clump imbalances) * k / 2
std::int64_t submatching_bound(const LiftGraph& lift);

// Submatching that still balances every clump and meets submatching_bound.
BalancingMatching prune_matching(const BalancingMatching& m, const LiftGraph& lift, int k);

struct BalanceOptions {
  int max_retries = 50;
  Rational flow_deficit{9, 10};
};

struct BalanceResult {
  BalancingMatching matching;
  std::vector<int> sigma;
  int retries = 0;
  Rational flow_value;
  Rational total_a;
};

BalanceResult balance_clumps(const Graph& g, const Decomposition& dec, std::uint64_t seed,
                             const BalanceOptions& options = {});

}  // namespace cyclecut
