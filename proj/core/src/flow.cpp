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

#include <algorithm>
#include <queue>
#include <string>

#include "cyclecut/balancing.hpp"
#include "cyclecut/error.hpp"

namespace cyclecut {

int FlowNetwork::add_node() { return nodes_++; }

int FlowNetwork::add_arc(int from, int to, const Rational& capacity) {
  if (from < 0 || from >= nodes_ || to < 0 || to >= nodes_) {
    throw Error(ErrorCode::InvalidArgument, "arc endpoint out of range");
  }
  if (capacity < Rational(0)) throw Error(ErrorCode::InvalidArgument, "negative capacity");
  arcs_.push_back(Arc{from, to, capacity});
  return static_cast<int>(arcs_.size()) - 1;
}

FlowNetwork build_network(const OrderedFilter& filter, const LiftGraph& lift, const RegularityInfo& info) {
  const int n = lift.num_base();
  const int s = lift.num_clumps();
  const Graph& g = lift.base();
  FlowNetwork net;

  std::vector<std::vector<std::int64_t>> count(static_cast<std::size_t>(s), std::vector<std::int64_t>(static_cast<std::size_t>(s), 0));
  for (Vertex u = 0; u < n; ++u) {
    const int i = lift.clump_of(lift_id(u, 1, n));
    for (Vertex v : g.neighbors(u)) {
      const int j = lift.clump_of(lift_id(v, 2, n));
      if (i != j) ++count[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  net.a.assign(static_cast<std::size_t>(s), std::vector<Rational>(static_cast<std::size_t>(s), Rational(0)));
  std::vector<Rational> out_cap(static_cast<std::size_t>(s), Rational(0));
  std::vector<Rational> in_cap(static_cast<std::size_t>(s), Rational(0));
  net.total_a = 0;
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      const Rational a(count[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], info.d);
      net.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a;
      out_cap[static_cast<std::size_t>(i)] += a;
      in_cap[static_cast<std::size_t>(j)] += a;
      net.total_a += a;
    }
  }

  std::vector<char> used(static_cast<std::size_t>(2 * n), 0);
  for (auto [u, v] : filter.edges) {
    used[static_cast<std::size_t>(lift_id(u, 1, n))] = 1;
    used[static_cast<std::size_t>(lift_id(v, 2, n))] = 1;
  }
  const Rational inf = net.total_a + Rational(2 * n + 1);

  net.source = net.add_node();
  net.sink = net.add_node();
  std::vector<int> b_in(static_cast<std::size_t>(s));
  std::vector<int> b_out(static_cast<std::size_t>(s));
  std::vector<int> t_in(static_cast<std::size_t>(s));
  std::vector<int> t_out(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    b_in[static_cast<std::size_t>(i)] = net.add_node();
    b_out[static_cast<std::size_t>(i)] = net.add_node();
    t_in[static_cast<std::size_t>(i)] = net.add_node();
    t_out[static_cast<std::size_t>(i)] = net.add_node();
    net.add_arc(net.source, b_in[static_cast<std::size_t>(i)], inf);
    net.add_arc(b_in[static_cast<std::size_t>(i)], b_out[static_cast<std::size_t>(i)], out_cap[static_cast<std::size_t>(i)]);
    net.add_arc(t_in[static_cast<std::size_t>(i)], t_out[static_cast<std::size_t>(i)], in_cap[static_cast<std::size_t>(i)]);
    net.add_arc(t_out[static_cast<std::size_t>(i)], net.sink, inf);
  }
  std::vector<int> v_in(static_cast<std::size_t>(2 * n), -1);
  std::vector<int> v_out(static_cast<std::size_t>(2 * n), -1);
  for (int x = 0; x < 2 * n; ++x) {
    if (!used[static_cast<std::size_t>(x)]) continue;
    v_in[static_cast<std::size_t>(x)] = net.add_node();
    v_out[static_cast<std::size_t>(x)] = net.add_node();
    net.add_arc(v_in[static_cast<std::size_t>(x)], v_out[static_cast<std::size_t>(x)], Rational(1));
    const auto k = static_cast<std::size_t>(lift.clump_of(x));
    if (lift_copy(x, n) == 1) {
      net.add_arc(b_out[k], v_in[static_cast<std::size_t>(x)], inf);
    } else {
      net.add_arc(v_out[static_cast<std::size_t>(x)], t_in[k], inf);
    }
  }
  for (auto [u, v] : filter.edges) {
    const int a = lift_id(u, 1, n);
    const int b = lift_id(v, 2, n);
    net.edge_arcs.push_back(net.add_arc(v_out[static_cast<std::size_t>(a)], v_in[static_cast<std::size_t>(b)], inf));
    net.filter_edges.emplace_back(u, v);
  }
  return net;
}

FlowResult max_flow(const FlowNetwork& net) {
  const auto& arcs = net.arcs();
  const int nodes = net.num_nodes();
  // residual arcs: 2k forward, 2k+1 backward
  std::vector<Rational> residual(arcs.size() * 2);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(nodes));
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    residual[2 * k] = arcs[k].capacity;
    residual[2 * k + 1] = 0;
    out[static_cast<std::size_t>(arcs[k].from)].push_back(static_cast<int>(2 * k));
    out[static_cast<std::size_t>(arcs[k].to)].push_back(static_cast<int>(2 * k + 1));
  }
  auto head = [&](int r) { return (r % 2 == 0) ? arcs[static_cast<std::size_t>(r / 2)].to : arcs[static_cast<std::size_t>(r / 2)].from; };

  FlowResult result;
  result.value = 0;
  if (net.source < 0 || net.sink < 0 || net.source == net.sink) return result;
  const Rational zero(0);
  while (true) {
    std::vector<int> via(static_cast<std::size_t>(nodes), -1);
    std::vector<char> seen(static_cast<std::size_t>(nodes), 0);
    std::queue<int> queue;
    queue.push(net.source);
    seen[static_cast<std::size_t>(net.source)] = 1;
    while (!queue.empty() && !seen[static_cast<std::size_t>(net.sink)]) {
      const int x = queue.front();
      queue.pop();
      for (int r : out[static_cast<std::size_t>(x)]) {
        const int y = head(r);
        if (seen[static_cast<std::size_t>(y)] || residual[static_cast<std::size_t>(r)] <= zero) continue;
        seen[static_cast<std::size_t>(y)] = 1;
        via[static_cast<std::size_t>(y)] = r;
        queue.push(y);
      }
    }
    if (!seen[static_cast<std::size_t>(net.sink)]) break;
    Rational bottleneck = -1;
    for (int y = net.sink; y != net.source; y = head(via[static_cast<std::size_t>(y)] ^ 1)) {
      const Rational& cap = residual[static_cast<std::size_t>(via[static_cast<std::size_t>(y)])];
      if (bottleneck < zero || cap < bottleneck) bottleneck = cap;
    }
    for (int y = net.sink; y != net.source; y = head(via[static_cast<std::size_t>(y)] ^ 1)) {
      const int r = via[static_cast<std::size_t>(y)];
      residual[static_cast<std::size_t>(r)] -= bottleneck;
      residual[static_cast<std::size_t>(r ^ 1)] += bottleneck;
    }
    result.value += bottleneck;
  }
  result.arc_flow.resize(arcs.size());
  for (std::size_t k = 0; k < arcs.size(); ++k) result.arc_flow[k] = residual[2 * k + 1];
  for (std::size_t e = 0; e < net.edge_arcs.size(); ++e) {
    const Rational& f = result.arc_flow[static_cast<std::size_t>(net.edge_arcs[e])];
    if (f > zero) {
      result.matching.edges.push_back(net.filter_edges[e]);
      result.matching.weights.push_back(f);
    }
  }
  return result;
}

}  // namespace cyclecut
