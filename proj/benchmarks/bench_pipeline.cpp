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

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "cyclecut/assembler.hpp"
#include "cyclecut/balancing.hpp"
#include "cyclecut/generators.hpp"
#include "cyclecut/hamiltonicity.hpp"

namespace cyclecut {
namespace {

void BM_PartitionCliques(benchmark::State& state) {
  const Graph g = gen_clique_union(std::vector<int>(static_cast<std::size_t>(state.range(0)), 12));
  for (auto _ : state) benchmark::DoNotOptimize(partition_cycles(g, {}, 1));
}
BENCHMARK(BM_PartitionCliques)->Arg(2)->Arg(8)->Arg(32);

void BM_PartitionDenseRandom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = gen_random_regular(n, n / 2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(partition_cycles(g, {}, 1));
}
BENCHMARK(BM_PartitionDenseRandom)->Arg(40)->Arg(80)->Arg(160);

void BM_HamPath(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HamMode mode = state.range(1) == 0 ? HamMode::Direct : HamMode::Paper;
  const Graph g = gen_random_regular(n, n / 2, 3);
  HamRequest req;
  req.cluster.vertices.resize(static_cast<std::size_t>(n));
  std::iota(req.cluster.vertices.begin(), req.cluster.vertices.end(), 0);
  req.x = 0;
  req.y = 1;
  for (auto _ : state) benchmark::DoNotOptimize(solve_ham_path(g, req, 5, {mode}));
}
BENCHMARK(BM_HamPath)->Args({60, 0})->Args({60, 1})->Args({200, 0})->Args({200, 1});

void BM_MaxFlow(benchmark::State& state) {
  // two complete bipartite blocks with a cubic graph across the big sides
  const int a = static_cast<int>(state.range(0));
  const int t = 3;
  const int sx = a + t;
  const int n = 2 * sx + 2 * a;
  std::vector<Edge> edges;
  for (int c = 0; c < 2; ++c) {
    const int x0 = c * (sx + a);
    for (int u = 0; u < sx; ++u) {
      for (int v = 0; v < a; ++v) edges.emplace_back(x0 + u, x0 + sx + v);
    }
  }
  const Graph extra = gen_random_regular(2 * sx, t, 4);
  auto xs = [&](int i) { return i < sx ? i : sx + a + (i - sx); };
  for (auto [u, v] : extra.edges()) edges.emplace_back(xs(u), xs(v));
  const Graph g = Graph::from_edges(n, edges);
  Decomposition dec;
  dec.n = n;
  for (int c = 0; c < 2; ++c) {
    Cluster cl;
    cl.kind = ClusterKind::NearBipartite;
    const int x0 = c * (sx + a);
    for (int u = 0; u < sx; ++u) cl.x.push_back(x0 + u);
    for (int v = 0; v < a; ++v) cl.y.push_back(x0 + sx + v);
    cl.vertices = cl.x;
    cl.vertices.insert(cl.vertices.end(), cl.y.begin(), cl.y.end());
    dec.clusters.push_back(std::move(cl));
  }
  const LiftGraph lift = build_lift(g, dec);
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::shuffle(sigma.begin(), sigma.end(), std::mt19937_64(2));
  const FlowNetwork net = build_network(build_filtered(lift, sigma), lift, validate_regular(g));
  for (auto _ : state) benchmark::DoNotOptimize(max_flow(net));
}
BENCHMARK(BM_MaxFlow)->Arg(10)->Arg(30);

}  // namespace
}  // namespace cyclecut

BENCHMARK_MAIN();
