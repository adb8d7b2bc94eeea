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

#include "cyclecut/cuts.hpp"
#include "cyclecut/decomposition.hpp"
#include "cyclecut/error.hpp"
#include "cyclecut/generators.hpp"
#include "oracles.hpp"

namespace cyclecut {
namespace {

using testing::brute_max_cut;
using testing::brute_sparsest_cut;

VertexList all_of(const Graph& g) {
  VertexList v;
  for (Vertex i = 0; i < g.num_vertices(); ++i) v.push_back(i);
  return v;
}

TEST(Cuts, SparsityOfCliqueSplit) {
  const Graph g = gen_clique_union({4});
  EXPECT_EQ(cut_sparsity(g, VertexList{0, 1}, VertexList{2, 3}), Rational(1));
  EXPECT_EQ(cut_sparsity(gen_petersen(), VertexList{0, 1, 2, 3, 4}, VertexList{5, 6, 7, 8, 9}), Rational(1, 5));
  try {
    cut_sparsity(g, VertexList{}, VertexList{0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySide);
  }
  EXPECT_THROW(cut_sparsity(g, VertexList{0, 1}, VertexList{1, 2}), Error);
}

TEST(Cuts, MaxCutMatchesBruteForceOnSmallSets) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 6 + 2 * (trial % 4);
    const int d = 3 + trial % 3;
    if ((n * d) % 2 != 0 || d >= n) continue;
    const Graph g = gen_random_regular(n, d, rng());
    const VertexList a = all_of(g);
    const Bipartition b = max_cut_bipartition(g, a);
    EXPECT_TRUE(b.exact);
    EXPECT_EQ(b.uncut, count_edges_within(g, a) - brute_max_cut(g, a));
    EXPECT_EQ(b.uncut, count_edges_within(g, b.x) + count_edges_within(g, b.y));
  }
}

TEST(Cuts, LocalSearchResultIsMoveStable) {
  const Graph g = gen_random_regular(40, 9, 5);
  const VertexList a = all_of(g);
  const Bipartition b = max_cut_bipartition(g, a, 10);
  EXPECT_FALSE(b.exact);
  const auto in_x = make_mask(g.num_vertices(), b.x);
  for (Vertex v : a) {
    int same = 0;
    int across = 0;
    for (Vertex u : g.neighbors(v)) (in_x[static_cast<std::size_t>(u)] == in_x[static_cast<std::size_t>(v)] ? same : across)++;
    const bool lone = (in_x[static_cast<std::size_t>(v)] ? b.x.size() : b.y.size()) == 1;
    if (!lone) {
      EXPECT_GE(across, same) << v;
    }
  }
}

TEST(Cuts, MaxCutOfBipartiteGraphLeavesNothing) {
  const Graph g = gen_bipartite_union(1, 5);
  const Bipartition b = max_cut_bipartition(g, all_of(g));
  EXPECT_EQ(b.uncut, 0);
}

TEST(SparseCut, BestCutMatchesBruteForce) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 8 + 2 * (trial % 3);
    const Graph g = gen_random_regular(n, 3, rng());
    const VertexList a = all_of(g);
    const Cut c = best_sparse_cut(g, a);
    EXPECT_EQ(c.sparsity, brute_sparsest_cut(g, a));
    EXPECT_EQ(c.sparsity, cut_sparsity(g, c.x, c.y));
    EXPECT_EQ(c.x.front(), 0);
  }
}

TEST(SparseCut, PetersenSplitsIntoTwoFiveCycles) {
  const Graph g = gen_petersen();
  const auto cut = find_sparse_cut(g, all_of(g), Rational(1, 5));
  ASSERT_TRUE(cut.has_value());
  EXPECT_EQ(cut->sparsity, Rational(1, 5));
  EXPECT_EQ(cut->x.size(), 5U);
}

TEST(SparseCut, CliqueHasNone) {
  const Graph g = gen_clique_union({9});
  EXPECT_FALSE(find_sparse_cut(g, all_of(g), Rational(1, 5)).has_value());
}

TEST(SparseCut, DisconnectedSetHasZeroCut) {
  const Graph g = gen_clique_union({4, 4});
  const auto cut = find_sparse_cut(g, all_of(g), Rational(0));
  ASSERT_TRUE(cut.has_value());
  EXPECT_EQ(cut->sparsity, Rational(0));
  EXPECT_EQ(cut->x, (VertexList{0, 1, 2, 3}));
}

TEST(Classify, NearFarAndAmbiguous) {
  const Graph bip = gen_bipartite_union(1, 4);
  EXPECT_TRUE(classify_cluster(bip, all_of(bip), Rational(1, 50), Rational(1, 10)).is_near());
  const Graph k5 = gen_clique_union({5});
  EXPECT_FALSE(classify_cluster(k5, all_of(k5), Rational(1, 50), Rational(1, 10)).is_near());
  // K_5 leaves 4 uncut edges: 4/25 sits between 1/10 and 1/5
  try {
    classify_cluster(k5, all_of(k5), Rational(1, 10), Rational(1, 5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ClassificationAmbiguous);
  }
}

TEST(Ladder, DefaultsAndValidation) {
  const auto info = validate_regular(gen_clique_union({4, 4}));
  const ParameterLadder ladder = ParameterLadder::defaults(info);
  EXPECT_EQ(ladder.delta, Rational(3, 32));
  EXPECT_EQ(ladder.r_max, 4);
  EXPECT_NO_THROW(ladder.validate());
  ParameterLadder bad = ladder;
  bad.beta = Rational(1, 2);
  EXPECT_THROW(bad.validate(), Error);
  bad = ladder;
  bad.delta = Rational(1);
  EXPECT_THROW(bad.validate(), Error);
}

Decomposition run(const Graph& g, const DecomposeOptions& options = {}) {
  const auto info = validate_regular(g);
  return decompose(g, info, ParameterLadder::defaults(info), options);
}

TEST(Decompose, CliqueUnionGivesOneFarClusterPerClique) {
  const Graph g = gen_clique_union({5, 5, 5});
  const Decomposition dec = run(g);
  ASSERT_EQ(dec.clusters.size(), 3U);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(dec.clusters[i].vertices.front(), static_cast<int>(5 * i));
    EXPECT_FALSE(dec.clusters[i].is_near());
  }
  const DecompositionCheck check = check_decomposition(g, dec);
  EXPECT_TRUE(check.partition);
  EXPECT_TRUE(check.count_within_cap);
  EXPECT_TRUE(check.no_sparse_cut);
  EXPECT_TRUE(check.near_sides_valid);
  EXPECT_TRUE(check.min_degree);
  EXPECT_EQ(check.cross_edges, 0);
  EXPECT_TRUE(check.all());
}

TEST(Decompose, BipartiteUnionWithFixedSides) {
  const Graph g = gen_bipartite_union(3, 4);
  DecomposeOptions options;
  options.fixed_sides = two_coloring(g);
  const Decomposition dec = run(g, options);
  ASSERT_EQ(dec.clusters.size(), 3U);
  for (const auto& c : dec.clusters) {
    EXPECT_TRUE(c.is_near());
    EXPECT_EQ(c.x.size(), 4U);
    EXPECT_EQ(c.y.size(), 4U);
    EXPECT_EQ(c.uncut, 0);
  }
  EXPECT_EQ(dec.num_near(), 3);
  EXPECT_TRUE(check_decomposition(g, dec).near_sides_valid);
}

TEST(Decompose, BipartiteUnionIsNearWithoutFixedSides) {
  const Graph g = gen_bipartite_union(2, 5);
  const Decomposition dec = run(g);
  ASSERT_EQ(dec.clusters.size(), 2U);
  for (const auto& c : dec.clusters) EXPECT_TRUE(c.is_near());
}

TEST(Decompose, PetersenGivesTwoFiveCycles) {
  const Decomposition dec = run(gen_petersen());
  ASSERT_EQ(dec.clusters.size(), 2U);
  EXPECT_EQ(dec.clusters[0].vertices.size(), 5U);
  EXPECT_EQ(dec.clusters[1].vertices.size(), 5U);
}

TEST(Decompose, DenseRandomGraphIsOneCluster) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = gen_random_regular(30, 16, seed);
    const Decomposition dec = run(g);
    EXPECT_EQ(dec.clusters.size(), 1U);
    EXPECT_TRUE(check_decomposition(g, dec).partition);
  }
}

TEST(Decompose, IsDeterministicAndCoversEveryVertex) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = gen_random_regular(24, 6, rng());
    try {
      const Decomposition a = run(g);
      const Decomposition b = run(g);
      ASSERT_EQ(a.clusters.size(), b.clusters.size());
      for (std::size_t i = 0; i < a.clusters.size(); ++i) EXPECT_EQ(a.clusters[i].vertices, b.clusters[i].vertices);
      const auto owner = a.cluster_of();
      for (int v : owner) EXPECT_GE(v, 0);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DecompositionFailed);
    }
  }
}

}  // namespace
}  // namespace cyclecut
