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

#include "cyclecut/balancing.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "cyclecut/error.hpp"
#include "log.hpp"

namespace cyclecut {

LiftGraph::LiftGraph(const Graph& base, std::vector<Clump> clumps)
    : base_(&base), clumps_(std::move(clumps)), clump_of_(static_cast<std::size_t>(2 * base.num_vertices()), -1) {
  for (std::size_t i = 0; i < clumps_.size(); ++i) {
    for (int v : clumps_[i].bottom) clump_of_[static_cast<std::size_t>(v)] = static_cast<int>(i);
    for (int v : clumps_[i].top) clump_of_[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
}

bool LiftGraph::has_edge(int a, int b) const {
  const int n = num_base();
  if (a < 0 || b < 0 || a >= 2 * n || b >= 2 * n) return false;
  if (lift_copy(a, n) == lift_copy(b, n)) return false;
  return base_->has_edge(lift_base(a, n), lift_base(b, n));
}

std::vector<int> LiftGraph::neighbors(int lift_vertex) const {
  const int n = num_base();
  const int other = 3 - lift_copy(lift_vertex, n);
  std::vector<int> out;
  for (Vertex u : base_->neighbors(lift_base(lift_vertex, n))) out.push_back(lift_id(u, other, n));
  return out;
}

LiftGraph build_lift(const Graph& g, const Decomposition& dec) {
  const int n = g.num_vertices();
  std::vector<Clump> clumps;
  for (std::size_t i = 0; i < dec.clusters.size(); ++i) {
    const Cluster& c = dec.clusters[i];
    auto lift_all = [n](const VertexList& vs, int copy) {
      std::vector<int> out;
      for (Vertex v : vs) out.push_back(lift_id(v, copy, n));
      return out;
    };
    if (c.is_near()) {
      clumps.push_back(Clump{lift_all(c.x, 1), lift_all(c.y, 2), static_cast<int>(i)});
      clumps.push_back(Clump{lift_all(c.y, 1), lift_all(c.x, 2), static_cast<int>(i)});
    } else {
      clumps.push_back(Clump{lift_all(c.vertices, 1), lift_all(c.vertices, 2), static_cast<int>(i)});
    }
  }
  return LiftGraph(g, std::move(clumps));
}

int clump_imbalance(const LiftGraph& lift, int i) {
  if (i < 0 || i >= lift.num_clumps()) throw Error(ErrorCode::InvalidArgument, "clump index out of range");
  const Clump& c = lift.clumps()[static_cast<std::size_t>(i)];
  return std::abs(static_cast<int>(c.top.size()) - static_cast<int>(c.bottom.size()));
}

int total_imbalance(const LiftGraph& lift) {
  int total = 0;
  for (int i = 0; i < lift.num_clumps(); ++i) total += clump_imbalance(lift, i);
  return total;
}

std::int64_t cross_clump_edges(const LiftGraph& lift) {
  const int n = lift.num_base();
  std::int64_t total = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : lift.base().neighbors(u)) {
      total += lift.clump_of(lift_id(u, 1, n)) != lift.clump_of(lift_id(v, 2, n));
    }
  }
  return total;
}

OrderedFilter build_filtered(const LiftGraph& lift, std::span<const int> sigma) {
  const int n = lift.num_base();
  if (sigma.size() != static_cast<std::size_t>(n)) throw Error(ErrorCode::InvalidArgument, "sigma has the wrong length");
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  for (int p : sigma) {
    if (p < 0 || p >= n || hit[static_cast<std::size_t>(p)]) throw Error(ErrorCode::InvalidArgument, "sigma is not a permutation");
    hit[static_cast<std::size_t>(p)] = 1;
  }
  OrderedFilter filter;
  filter.sigma.assign(sigma.begin(), sigma.end());
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : lift.base().neighbors(u)) {
      if (sigma[static_cast<std::size_t>(u)] < sigma[static_cast<std::size_t>(v)] &&
          lift.clump_of(lift_id(u, 1, n)) != lift.clump_of(lift_id(v, 2, n))) {
        filter.edges.emplace_back(u, v);
      }
    }
  }
  return filter;
}

std::vector<Rational> vertex_weights(const FractionalMatching& fm, const LiftGraph& lift) {
  const int n = lift.num_base();
  std::vector<Rational> w(static_cast<std::size_t>(2 * n), Rational(0));
  for (std::size_t e = 0; e < fm.edges.size(); ++e) {
    w[static_cast<std::size_t>(lift_id(fm.edges[e].first, 1, n))] += fm.weights[e];
    w[static_cast<std::size_t>(lift_id(fm.edges[e].second, 2, n))] += fm.weights[e];
  }
  return w;
}

namespace {

std::vector<Rational> signed_all(const std::vector<Rational>& w, const LiftGraph& lift) {
  std::vector<Rational> out;
  for (const Clump& c : lift.clumps()) {
    Rational wt(0);
    Rational wb(0);
    for (int v : c.top) wt += w[static_cast<std::size_t>(v)];
    for (int v : c.bottom) wb += w[static_cast<std::size_t>(v)];
    out.push_back((Rational(static_cast<std::int64_t>(c.top.size())) - wt) -
                  (Rational(static_cast<std::int64_t>(c.bottom.size())) - wb));
  }
  return out;
}

}  // namespace

Rational signed_disb(const FractionalMatching& fm, const LiftGraph& lift, int i) {
  return signed_all(vertex_weights(fm, lift), lift).at(static_cast<std::size_t>(i));
}

Rational total_disb(const FractionalMatching& fm, const LiftGraph& lift) {
  Rational total(0);
  for (const auto& s : signed_all(vertex_weights(fm, lift), lift)) total += abs(s);
  return total;
}

bool balances_all(const BalancingMatching& m, const LiftGraph& lift) {
  FractionalMatching fm;
  fm.edges = m.edges;
  fm.weights.assign(m.edges.size(), Rational(1));
  const auto w = vertex_weights(fm, lift);
  for (const auto& x : w) {
    if (x > Rational(1)) return false;
  }
  return total_disb(fm, lift) == Rational(0);
}

std::int64_t submatching_bound(const LiftGraph& lift) {
  return static_cast<std::int64_t>(total_imbalance(lift)) * lift.num_clumps() / 2;
}

BalancingMatching prune_matching(const BalancingMatching& m, const LiftGraph& lift, int k) {
  const int n = lift.num_base();
  (void)k;
  // mate over lift ids, restricted to V(M)
  std::vector<int> mate(static_cast<std::size_t>(2 * n), -1);
  std::map<int, LiftEdge> edge_of;  // keyed by the copy-1 end
  for (auto [u, v] : m.edges) {
    const int a = lift_id(u, 1, n);
    const int b = lift_id(v, 2, n);
    if (mate[static_cast<std::size_t>(a)] != -1 || mate[static_cast<std::size_t>(b)] != -1) {
      throw Error(ErrorCode::InvalidArgument, "prune_matching input is not a matching");
    }
    mate[static_cast<std::size_t>(a)] = b;
    mate[static_cast<std::size_t>(b)] = a;
    edge_of[a] = {u, v};
  }
  auto label = [&](int x) { return 2 * lift.clump_of(x) + (lift_copy(x, n) == 1 ? 0 : 1); };

  BalancingMatching result;
  for (std::size_t guard = 0; guard <= m.edges.size() + 1; ++guard) {
    // X_i, Y_i restricted to V(M); P pairs them in ascending order
    const int s = lift.num_clumps();
    std::vector<std::vector<int>> xs(static_cast<std::size_t>(s));
    std::vector<std::vector<int>> ys(static_cast<std::size_t>(s));
    for (int x = 0; x < 2 * n; ++x) {
      if (mate[static_cast<std::size_t>(x)] == -1) continue;
      (lift_copy(x, n) == 1 ? xs : ys)[static_cast<std::size_t>(lift.clump_of(x))].push_back(x);
    }
    bool balanced = true;
    std::vector<int> next(static_cast<std::size_t>(2 * n), -1);
    std::vector<int> exposed_x;
    for (int i = 0; i < s; ++i) {
      const auto& xi = xs[static_cast<std::size_t>(i)];
      const auto& yi = ys[static_cast<std::size_t>(i)];
      const std::size_t pairs = std::min(xi.size(), yi.size());
      for (std::size_t p = 0; p < pairs; ++p) next[static_cast<std::size_t>(yi[p])] = xi[p];
      for (std::size_t p = pairs; p < xi.size(); ++p) exposed_x.push_back(xi[p]);
      if (xi.size() != yi.size()) balanced = false;
    }
    if (balanced) return result;
    for (int x = 0; x < 2 * n; ++x) {
      if (mate[static_cast<std::size_t>(x)] != -1 && lift_copy(x, n) == 1) next[static_cast<std::size_t>(x)] = mate[static_cast<std::size_t>(x)];
    }

    auto drop = [&](const std::vector<int>& walk, std::size_t from, std::size_t to, bool keep) {
      for (std::size_t p = from; p < to; ++p) {
        const int x = walk[p];
        if (lift_copy(x, n) != 1 || walk[p + 1] != mate[static_cast<std::size_t>(x)]) continue;
        const int y = walk[p + 1];
        if (keep) result.edges.push_back(edge_of.at(x));
        mate[static_cast<std::size_t>(x)] = -1;
        mate[static_cast<std::size_t>(y)] = -1;
      }
    };

    // a walk that repeats a set label contains a same-set path or a cycle
    bool removed = false;
    for (int start = 0; start < 2 * n && !removed; ++start) {
      if (mate[static_cast<std::size_t>(start)] == -1) continue;
      std::vector<int> walk{start};
      std::map<int, std::size_t> first_seen{{label(start), 0}};
      while (next[static_cast<std::size_t>(walk.back())] != -1) {
        const int y = next[static_cast<std::size_t>(walk.back())];
        walk.push_back(y);
        auto [it, fresh] = first_seen.emplace(label(y), walk.size() - 1);
        if (!fresh) {
          drop(walk, it->second, walk.size() - 1, false);
          removed = true;
          break;
        }
      }
    }
    if (removed) continue;

    std::sort(exposed_x.begin(), exposed_x.end());
    std::vector<int> walk{exposed_x.front()};
    while (next[static_cast<std::size_t>(walk.back())] != -1) walk.push_back(next[static_cast<std::size_t>(walk.back())]);
    drop(walk, 0, walk.size() - 1, true);
  }
  return m;
}

BalanceResult balance_clumps(const Graph& g, const Decomposition& dec, std::uint64_t seed, const BalanceOptions& options) {
  const RegularityInfo info = validate_regular(g);
  const LiftGraph lift = build_lift(g, dec);
  const int n = g.num_vertices();
  BalanceResult result;
  result.sigma.resize(static_cast<std::size_t>(n));
  std::iota(result.sigma.begin(), result.sigma.end(), 0);
  if (total_imbalance(lift) == 0) return result;

  Rational best_deficit(-1);
  for (int attempt = 0; attempt < options.max_retries; ++attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt), 0xba1au};
    std::mt19937_64 rng(seq);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> sigma(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) sigma[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p;

    const OrderedFilter filter = build_filtered(lift, sigma);
    const FlowNetwork net = build_network(filter, lift, info);
    const FlowResult flow = max_flow(net);
    const Rational deficit = net.total_a - flow.value;
    if (best_deficit < Rational(0) || deficit < best_deficit) best_deficit = deficit;
    if (flow.value < net.total_a - options.flow_deficit) {
      logger()->debug("sigma attempt {}: flow {} below {} - {}", attempt, format_rational(flow.value),
                      format_rational(net.total_a), format_rational(options.flow_deficit));
      continue;
    }
    if (total_disb(flow.matching, lift) >= Rational(1)) continue;
    const FractionalMatching rounded = round_matching(flow.matching, lift);
    BalancingMatching m;
    for (std::size_t e = 0; e < rounded.edges.size(); ++e) {
      if (rounded.weights[e] == Rational(1)) m.edges.push_back(rounded.edges[e]);
    }
    if (!balances_all(m, lift)) continue;
    result.matching = prune_matching(m, lift, lift.num_clumps());
    result.sigma = sigma;
    result.retries = attempt;
    result.flow_value = flow.value;
    result.total_a = net.total_a;
    return result;
  }
  throw Error(ErrorCode::BalancingFailed, "no sigma produced an almost balancing flow",
              {{"retries", options.max_retries}, {"best_deficit", format_rational(best_deficit)}});
}

}  // namespace cyclecut
