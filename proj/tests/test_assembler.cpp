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

#include <random>

#include "builders.hpp"
#include "errors.hpp"
#include "oracles.hpp"
#include "cyclecut/assembler.hpp"
#include "cyclecut/generators.hpp"

namespace cyclecut {
namespace {

using testing::covers_exactly;
using testing::range;
using testing::thrown_code;

int cycle_bound(const Graph& g) {
  const int d = g.degree(0);
  return g.num_vertices() / (d + 1);
}

void expect_cycle_partition(const Graph& g, const CycleResult& r) {
  EXPECT_TRUE(covers_exactly(g, r.partition.cycles, true));
  EXPECT_LE(static_cast<int>(r.partition.cycles.size()), cycle_bound(g));
  EXPECT_TRUE(verify_cycle_partition(g, r.partition.cycles).pass);
  EXPECT_EQ(r.stats.l, cycle_bound(g));
  EXPECT_GE(r.stats.attempts, 1);
}

TEST(Ladder, OverridesReplaceOnlyGivenValues) {
  const auto info = validate_regular(gen_clique_union({6, 6}));
  const ParameterLadder base = ParameterLadder::defaults(info);
  LadderOverrides o;
  o.zeta = Rational(1, 7);
  const ParameterLadder out = o.apply(base);
  EXPECT_EQ(out.zeta, Rational(1, 7));
  EXPECT_EQ(out.eta, base.eta);
  EXPECT_EQ(out.delta, base.delta);
}

TEST(TwoMatching, FindsDisjointCrossEdges) {
  const Graph g = Graph::from_edges(6, std::vector<Edge>{{0, 3}, {0, 4}, {1, 3}, {2, 5}});
  const VertexList a{0, 1, 2};
  const VertexList b{3, 4, 5};
  const auto m = find_two_matching(g, a, b);
  ASSERT_TRUE(m);
  const auto [e, f] = *m;
  EXPECT_TRUE(g.has_edge(e.first, e.second));
  EXPECT_TRUE(g.has_edge(f.first, f.second));
  EXPECT_TRUE(std::binary_search(a.begin(), a.end(), e.first));
  EXPECT_TRUE(std::binary_search(b.begin(), b.end(), e.second));
  EXPECT_NE(e.first, f.first);
  EXPECT_NE(e.second, f.second);
  const Graph star = Graph::from_edges(6, std::vector<Edge>{{0, 3}, {0, 4}, {0, 5}});
  EXPECT_FALSE(find_two_matching(star, a, b));
}

TEST(Cycles, CliqueUnions) {
  for (const std::vector<int>& sizes :
       {std::vector<int>{5}, std::vector<int>{4, 4}, std::vector<int>{6, 6, 6}, std::vector<int>{9, 9, 9, 9, 9}}) {
    const Graph g = gen_clique_union(sizes);
    const CycleResult r = partition_cycles(g, {}, 1);
    expect_cycle_partition(g, r);
    EXPECT_EQ(r.partition.cycles.size(), sizes.size());
  }
}

TEST(Cycles, DenseRandomGraphs) {
  std::mt19937_64 rng(2);
  for (int n : {20, 40, 60}) {
    for (int trial = 0; trial < 4; ++trial) {
      const Graph g = gen_random_regular(n, n / 2, rng());
      expect_cycle_partition(g, partition_cycles(g, {}, rng()));
    }
  }
}

TEST(Cycles, PetersenNeedsTwo) {
  const Graph g = gen_petersen();
  const CycleResult r = partition_cycles(g, {}, 3);
  expect_cycle_partition(g, r);
  EXPECT_EQ(r.partition.cycles.size(), 2U);
}

TEST(Cycles, PlantedImbalanceUsesAForest) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 6; ++trial) {
    const auto p = testing::planted_two_near(8, 1 + trial % 3, rng());
    const CycleResult r = partition_cycles(p.g, {}, rng());
    expect_cycle_partition(p.g, r);
  }
}

TEST(Cycles, NeverBeatsTheMinimumCover) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 6 + 2 * static_cast<int>(rng() % 4);
    const Graph g = gen_random_regular(n, 3, rng());
    const auto kmin = testing::search_min_cycle_cover(g);
    try {
      const CycleResult r = partition_cycles(g, {}, rng());
      ASSERT_TRUE(kmin);
      EXPECT_TRUE(covers_exactly(g, r.partition.cycles, true));
      EXPECT_GE(static_cast<int>(r.partition.cycles.size()), *kmin);
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::AssemblyFailed || e.code() == ErrorCode::TwoMatchingMissing);
    }
  }
}

TEST(Cycles, SameSeedSameAnswer) {
  const Graph g = gen_random_regular(40, 20, 9);
  EXPECT_EQ(partition_cycles(g, {}, 7).partition.cycles, partition_cycles(g, {}, 7).partition.cycles);
  AssemblyConfig threaded;
  threaded.threads = 3;
  const auto p = testing::planted_two_near(8, 2, 3);
  EXPECT_EQ(partition_cycles(p.g, {}, 7).partition.cycles, partition_cycles(p.g, threaded, 7).partition.cycles);
}

TEST(Cycles, ExactCountPadsUpToTheBound) {
  const Graph g = gen_random_regular(40, 12, 6);
  AssemblyConfig config;
  config.exact_count = true;
  const CycleResult r = partition_cycles(g, config, 2);
  expect_cycle_partition(g, r);
  EXPECT_EQ(static_cast<int>(r.partition.cycles.size()), cycle_bound(g));
  EXPECT_TRUE(closing_cycle_check(r.partition, g).pass);
}

TEST(Cycles, EveryModeWorks) {
  const Graph g = gen_random_regular(64, 32, 11);
  for (HamMode mode : {HamMode::Direct, HamMode::Paper}) {
    AssemblyConfig config;
    config.mode = mode;
    expect_cycle_partition(g, partition_cycles(g, config, 1));
  }
}

TEST(Cycles, RejectsIrregularInput) {
  const Graph g = gen_clique_union({4, 5});
  EXPECT_EQ(thrown_code([&] { partition_cycles(g, {}, 1); }), ErrorCode::NotRegular);
}

// d-regular bipartite: K_{m,m} with d' disjoint perfect matchings removed.
Graph bipartite_regular(int m, int drop) {
  std::vector<Edge> edges;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if ((b - a + m) % m >= drop) edges.emplace_back(a, m + b);
    }
  }
  return Graph::from_edges(2 * m, edges);
}

TEST(Paths, BipartiteFamilies) {
  for (const Graph& g : {gen_bipartite_union(1, 5), gen_bipartite_union(3, 6), bipartite_regular(12, 3),
                         bipartite_regular(20, 8)}) {
    const PathResult r = partition_paths_bipartite(g, {}, 1);
    const int d = g.degree(0);
    EXPECT_TRUE(covers_exactly(g, r.partition.paths, false));
    EXPECT_LE(static_cast<int>(r.partition.paths.size()), g.num_vertices() / (2 * d));
    EXPECT_TRUE(verify_path_partition(g, r.partition.paths, true).pass);
  }
}

TEST(Paths, RejectsOddCycles) {
  EXPECT_EQ(thrown_code([] { partition_paths_bipartite(gen_clique_union({4}), {}, 1); }), ErrorCode::NotBipartite);
}

}  // namespace
}  // namespace cyclecut
