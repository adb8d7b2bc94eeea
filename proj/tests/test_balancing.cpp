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

#include <gtest/gtest.h>

#include <map>
#include <queue>
#include <random>

#include "builders.hpp"
#include "cyclecut/balancing.hpp"
#include "cyclecut/error.hpp"
#include "cyclecut/generators.hpp"
#include "cyclecut/linear_forest.hpp"

namespace cyclecut {
namespace {

using testing::planted_two_near;

std::vector<int> random_sigma(int n, std::mt19937_64& rng) {
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::shuffle(sigma.begin(), sigma.end(), rng);
  return sigma;
}

// Greedy random matching among the filter edges.
BalancingMatching random_matching(const OrderedFilter& f, int n, std::mt19937_64& rng) {
  std::vector<LiftEdge> edges = f.edges;
  std::shuffle(edges.begin(), edges.end(), rng);
  std::vector<char> used1(static_cast<std::size_t>(n), 0);
  std::vector<char> used2(static_cast<std::size_t>(n), 0);
  BalancingMatching m;
  for (auto [u, v] : edges) {
    if (used1[static_cast<std::size_t>(u)] || used2[static_cast<std::size_t>(v)]) continue;
    if (rng() % 3 == 0) continue;
    used1[static_cast<std::size_t>(u)] = used2[static_cast<std::size_t>(v)] = 1;
    m.edges.emplace_back(u, v);
  }
  return m;
}

// Per-clump (|T \ V(M)| - |B \ V(M)|), computed from scratch.
std::vector<int> residuals(const BalancingMatching& m, const LiftGraph& lift) {
  const int n = lift.num_base();
  std::vector<char> hit(static_cast<std::size_t>(2 * n), 0);
  for (auto [u, v] : m.edges) {
    hit[static_cast<std::size_t>(u)] = 1;
    hit[static_cast<std::size_t>(n + v)] = 1;
  }
  std::vector<int> out;
  for (const Clump& c : lift.clumps()) {
    int t = 0;
    int b = 0;
    for (int x : c.top) t += !hit[static_cast<std::size_t>(x)];
    for (int x : c.bottom) b += !hit[static_cast<std::size_t>(x)];
    out.push_back(t - b);
  }
  return out;
}

TEST(Lift, ClumpsOfPlantedInstance) {
  const auto p = planted_two_near(5, 2, 1);
  const LiftGraph lift = build_lift(p.g, p.dec);
  ASSERT_EQ(lift.num_clumps(), 4);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(clump_imbalance(lift, i), 2);
  EXPECT_EQ(total_imbalance(lift), 8);
  // only X-X edges cross clumps, once per orientation
  const std::int64_t xx = static_cast<std::int64_t>(2 * 7 * 2 / 2);
  EXPECT_EQ(cross_clump_edges(lift), 2 * xx);
  EXPECT_EQ(submatching_bound(lift), 8 * 4 / 2);
}

TEST(Lift, FarClusterIsOneBalancedClump) {
  const Graph g = gen_clique_union({5});
  Decomposition dec;
  dec.n = 5;
  dec.clusters.push_back(testing::whole_cluster(g));
  const LiftGraph lift = build_lift(g, dec);
  EXPECT_EQ(lift.num_clumps(), 1);
  EXPECT_EQ(total_imbalance(lift), 0);
  EXPECT_TRUE(lift.has_edge(0, 5 + 1));
  EXPECT_FALSE(lift.has_edge(0, 1));
  EXPECT_EQ(lift.neighbors(0).size(), 4U);
}

TEST(Filter, KeepsOrderedCrossClumpEdges) {
  std::mt19937_64 rng(4);
  const auto p = planted_two_near(4, 3, 2);
  const LiftGraph lift = build_lift(p.g, p.dec);
  const int n = p.g.num_vertices();
  for (int trial = 0; trial < 10; ++trial) {
    const auto sigma = random_sigma(n, rng);
    const OrderedFilter f = build_filtered(lift, sigma);
    std::size_t expect = 0;
    for (auto [u, v] : p.g.edges()) {
      if (sigma[static_cast<std::size_t>(u)] > sigma[static_cast<std::size_t>(v)]) std::swap(u, v);
      expect += lift.clump_of(u) != lift.clump_of(n + v);
    }
    EXPECT_EQ(f.edges.size(), expect);
    for (auto [u, v] : f.edges) {
      EXPECT_LT(sigma[static_cast<std::size_t>(u)], sigma[static_cast<std::size_t>(v)]);
      EXPECT_NE(lift.clump_of(u), lift.clump_of(n + v));
    }
  }
  std::vector<int> bad(static_cast<std::size_t>(n), 0);
  EXPECT_THROW(build_filtered(lift, bad), Error);
}

// Conservation, capacities and absence of an augmenting path.
void expect_max_flow(const FlowNetwork& net, const FlowResult& r) {
  const auto& arcs = net.arcs();
  ASSERT_EQ(r.arc_flow.size(), arcs.size());
  std::vector<Rational> balance(static_cast<std::size_t>(net.num_nodes()), Rational(0));
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    EXPECT_GE(r.arc_flow[i], Rational(0));
    EXPECT_LE(r.arc_flow[i], arcs[i].capacity);
    balance[static_cast<std::size_t>(arcs[i].from)] -= r.arc_flow[i];
    balance[static_cast<std::size_t>(arcs[i].to)] += r.arc_flow[i];
  }
  for (int v = 0; v < net.num_nodes(); ++v) {
    if (v == net.source || v == net.sink) continue;
    EXPECT_EQ(balance[static_cast<std::size_t>(v)], Rational(0)) << "node " << v;
  }
  EXPECT_EQ(balance[static_cast<std::size_t>(net.sink)], r.value);
  std::vector<char> seen(static_cast<std::size_t>(net.num_nodes()), 0);
  std::queue<int> q;
  q.push(net.source);
  seen[static_cast<std::size_t>(net.source)] = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      int to = -1;
      if (arcs[i].from == v && r.arc_flow[i] < arcs[i].capacity) to = arcs[i].to;
      if (arcs[i].to == v && r.arc_flow[i] > Rational(0)) to = arcs[i].from;
      if (to >= 0 && !seen[static_cast<std::size_t>(to)]) {
        seen[static_cast<std::size_t>(to)] = 1;
        q.push(to);
      }
    }
  }
  EXPECT_FALSE(seen[static_cast<std::size_t>(net.sink)]) << "augmenting path left";
}

TEST(Flow, MaxFlowIsFeasibleAndMaximal) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 8; ++trial) {
    const auto p = planted_two_near(3 + trial % 3, 1 + trial % 3, rng());
    const LiftGraph lift = build_lift(p.g, p.dec);
    const auto info = validate_regular(p.g);
    const OrderedFilter f = build_filtered(lift, random_sigma(p.g.num_vertices(), rng));
    const FlowNetwork net = build_network(f, lift, info);
    EXPECT_EQ(net.edge_arcs.size(), f.edges.size());
    const FlowResult r = max_flow(net);
    expect_max_flow(net, r);
    EXPECT_LE(r.value, net.total_a);
    for (const auto& w : r.matching.weights) {
      EXPECT_GT(w, Rational(0));
      EXPECT_LE(w, Rational(1));
    }
  }
}

TEST(Rounding, ProducesIntegralBalancingMatching) {
  std::mt19937_64 rng(21);
  int rounded = 0;
  for (int trial = 0; trial < 60 && rounded < 15; ++trial) {
    const auto p = planted_two_near(3 + trial % 4, 1 + trial % 4, rng());
    const LiftGraph lift = build_lift(p.g, p.dec);
    const auto info = validate_regular(p.g);
    const FlowNetwork net =
        build_network(build_filtered(lift, random_sigma(p.g.num_vertices(), rng)), lift, info);
    const FlowResult r = max_flow(net);
    if (total_disb(r.matching, lift) >= Rational(1)) continue;
    ++rounded;
    std::vector<RoundingStep> steps;
    const FractionalMatching out = round_matching(r.matching, lift, [&](const RoundingStep& s) { steps.push_back(s); });
    for (const auto& w : out.weights) EXPECT_EQ(w, Rational(1));
    for (const auto& w : vertex_weights(out, lift)) EXPECT_LE(w, Rational(1));
    EXPECT_EQ(total_disb(out, lift), Rational(0));
    for (const auto& s : steps) {
      EXPECT_GT(s.lambda, Rational(0));
      if (s.cycle) {
        EXPECT_EQ(s.disb_before, s.disb_after);
      }
      Rational before(0);
      Rational after(0);
      for (const auto& x : s.disb_before) before += abs(x);
      for (const auto& x : s.disb_after) after += abs(x);
      EXPECT_LE(after, before);
    }
    BalancingMatching bm{out.edges};
    for (int res : residuals(bm, lift)) EXPECT_EQ(res, 0);
  }
  EXPECT_GT(rounded, 0);
}

TEST(Rounding, RejectsMatchingsFarFromBalance) {
  const auto p = planted_two_near(4, 2, 3);
  const LiftGraph lift = build_lift(p.g, p.dec);
  try {
    round_matching(FractionalMatching{}, lift);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAlmostBalancing);
  }
}

TEST(Prune, KeepsBalanceWithinBound) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = planted_two_near(4 + trial % 3, 1 + trial % 3, rng());
    const BalanceResult r = balance_clumps(p.g, p.dec, rng());
    const LiftGraph lift = build_lift(p.g, p.dec);
    EXPECT_TRUE(balances_all(r.matching, lift));
    for (int res : residuals(r.matching, lift)) EXPECT_EQ(res, 0);
    EXPECT_LE(static_cast<std::int64_t>(r.matching.edges.size()), submatching_bound(lift));
    const BalancingMatching again = prune_matching(r.matching, lift, lift.num_clumps());
    EXPECT_TRUE(balances_all(again, lift));
    for (const auto& e : again.edges) {
      EXPECT_NE(std::find(r.matching.edges.begin(), r.matching.edges.end(), e), r.matching.edges.end());
    }
  }
}

TEST(Balance, PreBalancedNeedsNothing) {
  const Graph g = gen_clique_union({5, 5});
  const auto info = validate_regular(g);
  const Decomposition dec = decompose(g, info, ParameterLadder::defaults(info));
  const BalanceResult r = balance_clumps(g, dec, 1);
  EXPECT_TRUE(r.matching.edges.empty());
  EXPECT_EQ(r.retries, 0);
}

TEST(Balance, IsDeterministicForASeed) {
  const auto p = planted_two_near(5, 3, 6);
  const BalanceResult a = balance_clumps(p.g, p.dec, 17);
  const BalanceResult b = balance_clumps(p.g, p.dec, 17);
  EXPECT_EQ(a.matching.edges, b.matching.edges);
  EXPECT_EQ(a.sigma, b.sigma);
}

TEST(PullBack, OrderedMatchingsNeverCloseCycles) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = planted_two_near(3 + trial % 4, 1 + trial % 4, rng());
    const LiftGraph lift = build_lift(p.g, p.dec);
    const OrderedFilter f = build_filtered(lift, random_sigma(p.g.num_vertices(), rng));
    const BalancingMatching m = random_matching(f, p.g.num_vertices(), rng);
    LinearForest forest;
    ASSERT_NO_THROW(forest = pull_back(m, lift));
    std::size_t edges = 0;
    for (const auto& path : forest.paths) {
      ASSERT_GE(path.size(), 2U);
      EXPECT_LT(path.front(), path.back());
      edges += path.size() - 1;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) EXPECT_TRUE(p.g.has_edge(path[i], path[i + 1]));
    }
    EXPECT_EQ(edges, m.edges.size());
  }
}

TEST(PullBack, UnorderedTriangleIsACycle) {
  const Graph g = gen_clique_union({4});
  Decomposition dec;
  dec.n = 4;
  dec.clusters.push_back(testing::whole_cluster(g));
  const LiftGraph lift = build_lift(g, dec);
  BalancingMatching m{{{0, 1}, {1, 2}, {2, 0}}};
  try {
    pull_back(m, lift);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CycleDetected);
  }
}

}  // namespace
}  // namespace cyclecut
