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

#include "cyclecut/error.hpp"
#include "cyclecut/generators.hpp"
#include "cyclecut/graph.hpp"
#include "cyclecut/rational.hpp"

namespace cyclecut {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

TEST(Rational, ParsesFractionsDecimalsAndIntegers) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-1.5"), Rational(-3, 2));
  EXPECT_EQ(format_rational(Rational(6, 8)), "3/4");
  EXPECT_EQ(format_rational(Rational(4, 2)), "2");
  EXPECT_EQ(ceil(Rational(7, 2)), 4);
  EXPECT_EQ(floor(Rational(-7, 2)), -4);
}

TEST(Rational, RejectsGarbage) {
  for (const char* bad : {"", "x", "1/0", "1..2", "3/"}) {
    EXPECT_EQ(code_of([&] { parse_rational(bad); }), ErrorCode::ParseError) << bad;
  }
}

TEST(Graph, FromEdgesBuildsAdjacency) {
  const std::vector<Edge> edges{{0, 1}, {2, 1}, {2, 3}};
  const Graph g = Graph::from_edges(4, edges);
  EXPECT_EQ(g.num_vertices(), 4);
  EXPECT_EQ(g.num_edges(), 3U);
  EXPECT_TRUE(g.has_edge(1, 2));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(0, 3));
  EXPECT_EQ(g.degree(2), 2);
  const std::vector<Edge> expect{{0, 1}, {1, 2}, {2, 3}};
  EXPECT_EQ(g.edges(), expect);
}

TEST(Graph, FromEdgesRejectsBadInput) {
  EXPECT_EQ(code_of([] { Graph::from_edges(3, std::vector<Edge>{{0, 0}}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Graph::from_edges(3, std::vector<Edge>{{0, 3}}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 0}}); }), ErrorCode::InvalidArgument);
}

TEST(Graph, ValidateRegular) {
  const auto info = validate_regular(gen_petersen());
  EXPECT_EQ(info.n, 10);
  EXPECT_EQ(info.d, 3);
  EXPECT_EQ(info.c, Rational(3, 10));
  const Graph path = Graph::from_edges(3, std::vector<Edge>{{0, 1}, {1, 2}});
  try {
    validate_regular(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotRegular);
    EXPECT_TRUE(e.detail().contains("u"));
    EXPECT_TRUE(e.detail().contains("degree_v"));
  }
  EXPECT_EQ(code_of([] { validate_regular(Graph(1)); }), ErrorCode::SizeTooSmall);
  EXPECT_EQ(code_of([] { validate_regular(Graph(4)); }), ErrorCode::SizeTooSmall);
}

TEST(Graph, ComponentsAndColouring) {
  const Graph g = gen_bipartite_union(2, 3);
  const auto comps = components(g);
  ASSERT_EQ(comps.size(), 2U);
  EXPECT_EQ(comps[0].front(), 0);
  EXPECT_EQ(comps[1].front(), 6);
  const auto colour = two_coloring(g);
  ASSERT_TRUE(colour.has_value());
  for (auto [u, v] : g.edges()) EXPECT_NE((*colour)[static_cast<std::size_t>(u)], (*colour)[static_cast<std::size_t>(v)]);
  EXPECT_FALSE(two_coloring(gen_petersen()).has_value());
  EXPECT_FALSE(two_coloring(gen_cycle(5)).has_value());
  EXPECT_TRUE(two_coloring(gen_cycle(6)).has_value());
}

TEST(Graph, SetHelpers) {
  const VertexList a{5, 1, 3, 3};
  EXPECT_EQ(sorted_unique(a), (VertexList{1, 3, 5}));
  EXPECT_EQ(set_difference(VertexList{1, 2, 3, 4}, VertexList{2, 4}), (VertexList{1, 3}));
  EXPECT_EQ(set_intersection(VertexList{1, 2, 3, 4}, VertexList{2, 4, 6}), (VertexList{2, 4}));
  const Graph g = gen_clique_union({4});
  EXPECT_EQ(count_edges_within(g, VertexList{0, 1, 2}), 3);
  EXPECT_EQ(count_edges_between(g, VertexList{0, 1}, VertexList{2, 3}), 4);
}

TEST(Generators, CliqueUnion) {
  const Graph g = gen_clique_union({4, 4});
  EXPECT_EQ(g.num_vertices(), 8);
  EXPECT_EQ(validate_regular(g).d, 3);
  EXPECT_TRUE(g.has_edge(0, 3));
  EXPECT_FALSE(g.has_edge(3, 4));
  EXPECT_EQ(code_of([] { validate_regular(gen_clique_union({4, 5})); }), ErrorCode::NotRegular);
  EXPECT_EQ(code_of([] { gen_clique_union({1}); }), ErrorCode::SizeTooSmall);
}

TEST(Generators, BipartiteUnionSides) {
  const Graph g = gen_bipartite_union(2, 3);
  EXPECT_EQ(g.num_vertices(), 12);
  EXPECT_EQ(validate_regular(g).d, 3);
  EXPECT_TRUE(g.has_edge(0, 3));
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(6, 9));
}

TEST(Generators, PetersenShape) {
  const Graph g = gen_petersen();
  EXPECT_EQ(g.num_edges(), 15U);
  for (int i = 0; i < 5; ++i) {
    EXPECT_TRUE(g.has_edge(i, (i + 1) % 5));
    EXPECT_TRUE(g.has_edge(i, i + 5));
    EXPECT_TRUE(g.has_edge(5 + i, 5 + (i + 2) % 5));
  }
}

TEST(Generators, RandomRegularIsRegularAndDeterministic) {
  for (int n : {10, 20, 41}) {
    for (int d : {3, 4, 8}) {
      if ((n * d) % 2 != 0) continue;
      for (std::uint64_t seed : {1U, 2U, 3U}) {
        const Graph g = gen_random_regular(n, d, seed);
        const auto info = validate_regular(g);
        EXPECT_EQ(info.n, n);
        EXPECT_EQ(info.d, d);
        EXPECT_EQ(g.edges(), gen_random_regular(n, d, seed).edges());
      }
    }
  }
  EXPECT_NE(gen_random_regular(30, 10, 1).edges(), gen_random_regular(30, 10, 2).edges());
  EXPECT_EQ(code_of([] { gen_random_regular(5, 3, 0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { gen_random_regular(4, 4, 0); }), ErrorCode::InvalidArgument);
}

}  // namespace
}  // namespace cyclecut
