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
#include <optional>
#include <string>

#include "cyclecut/balancing.hpp"
#include "cyclecut/error.hpp"

namespace cyclecut {

namespace {

struct HEdge {
  int to = 0;
  int edge = -1;  // index into fm.edges, -1 for a fake edge
};

// A closed walk or leaf-to-leaf path in the auxiliary graph, as vertices
// v_0 .. v_L with the connecting edge ids.
struct Trail {
  std::vector<int> vertices;
  std::vector<int> edges;
  bool cycle = false;
};

std::optional<Trail> find_cycle(const std::vector<std::vector<HEdge>>& adj, const std::vector<int>& nodes) {
  const std::size_t size = adj.size();
  std::vector<int> state(size, 0);  // 0 new, 1 on stack, 2 done
  std::vector<int> parent(size, -1);
  std::vector<int> parent_slot(size, -1);  // index in adj[parent]
  std::vector<std::size_t> cursor(size, 0);
  for (int root : nodes) {
    if (state[static_cast<std::size_t>(root)] != 0) continue;
    std::vector<int> stack{root};
    state[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      auto& cur = cursor[static_cast<std::size_t>(v)];
      if (cur == adj[static_cast<std::size_t>(v)].size()) {
        state[static_cast<std::size_t>(v)] = 2;
        stack.pop_back();
        continue;
      }
      const int slot = static_cast<int>(cur++);
      const HEdge& h = adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(slot)];
      const int p = parent[static_cast<std::size_t>(v)];
      if (p != -1) {
        const HEdge& back = adj[static_cast<std::size_t>(p)][static_cast<std::size_t>(parent_slot[static_cast<std::size_t>(v)])];
        if (h.to == p && h.edge == back.edge && (h.edge != -1 || back.to == v)) continue;
      }
      if (state[static_cast<std::size_t>(h.to)] == 1) {
        Trail t;
        t.cycle = true;
        // h.to is an ancestor of v on the stack
        std::vector<int> up{v};
        std::vector<int> up_edges;
        int x = v;
        while (x != h.to) {
          const int px = parent[static_cast<std::size_t>(x)];
          up_edges.push_back(adj[static_cast<std::size_t>(px)][static_cast<std::size_t>(parent_slot[static_cast<std::size_t>(x)])].edge);
          up.push_back(px);
          x = px;
        }
        // walk h.to -> ... -> v -> h.to
        std::reverse(up.begin(), up.end());
        std::reverse(up_edges.begin(), up_edges.end());
        t.vertices = up;
        t.vertices.push_back(h.to);
        t.edges = up_edges;
        t.edges.push_back(h.edge);
        return t;
      }
      if (state[static_cast<std::size_t>(h.to)] == 0) {
        state[static_cast<std::size_t>(h.to)] = 1;
        parent[static_cast<std::size_t>(h.to)] = v;
        parent_slot[static_cast<std::size_t>(h.to)] = slot;
        stack.push_back(h.to);
      }
    }
  }
  return std::nullopt;
}

Trail leaf_path(const std::vector<std::vector<HEdge>>& adj, const std::vector<int>& nodes) {
  int x = -1;
  for (int v : nodes) {
    if (adj[static_cast<std::size_t>(v)].size() == 1) {
      x = v;
      break;
    }
  }
  if (x < 0) throw Error(ErrorCode::NotAlmostBalancing, "auxiliary forest has no leaf");
  std::vector<int> prev(adj.size(), -2);
  std::vector<int> prev_edge(adj.size(), -1);
  std::vector<int> queue{x};
  prev[static_cast<std::size_t>(x)] = -1;
  int y = -1;
  for (std::size_t head = 0; head < queue.size() && y < 0; ++head) {
    const int v = queue[head];
    for (const HEdge& h : adj[static_cast<std::size_t>(v)]) {
      if (prev[static_cast<std::size_t>(h.to)] != -2) continue;
      prev[static_cast<std::size_t>(h.to)] = v;
      prev_edge[static_cast<std::size_t>(h.to)] = h.edge;
      queue.push_back(h.to);
      if (adj[static_cast<std::size_t>(h.to)].size() == 1) {
        y = h.to;
        break;
      }
    }
  }
  if (y < 0) throw Error(ErrorCode::NotAlmostBalancing, "auxiliary tree has a single leaf");
  Trail t;
  for (int v = y; v != -1; v = prev[static_cast<std::size_t>(v)]) {
    t.vertices.push_back(v);
    if (prev[static_cast<std::size_t>(v)] != -1) t.edges.push_back(prev_edge[static_cast<std::size_t>(v)]);
  }
  std::reverse(t.vertices.begin(), t.vertices.end());
  std::reverse(t.edges.begin(), t.edges.end());
  return t;
}

bool fractional(const Rational& r) { return r > Rational(0) && r < Rational(1); }

int sign(const Rational& r) { return r > Rational(0) ? 1 : (r < Rational(0) ? -1 : 0); }

}  // namespace

FractionalMatching round_matching(const FractionalMatching& fm_in, const LiftGraph& lift, const RoundingObserver& observer) {
  const int n = lift.num_base();
  const int s = lift.num_clumps();
  if (fm_in.edges.size() != fm_in.weights.size()) throw Error(ErrorCode::InvalidArgument, "weights do not match edges");
  FractionalMatching fm = fm_in;
  for (std::size_t e = 0; e < fm.edges.size(); ++e) {
    if (fm.weights[e] < Rational(0) || fm.weights[e] > Rational(1)) throw Error(ErrorCode::InvalidArgument, "edge weight outside [0, 1]");
    if (!lift.base().has_edge(fm.edges[e].first, fm.edges[e].second)) throw Error(ErrorCode::InvalidArgument, "edge is not in the lift");
  }
  for (const auto& w : vertex_weights(fm, lift)) {
    if (w > Rational(1)) throw Error(ErrorCode::InvalidArgument, "vertex weight exceeds 1");
  }
  const Rational start_disb = total_disb(fm, lift);
  if (start_disb >= Rational(1)) {
    throw Error(ErrorCode::NotAlmostBalancing, "total imbalance is not below 1", {{"disb", format_rational(start_disb)}});
  }

  // ends of edge e as lift ids
  auto end_a = [&](std::size_t e) { return lift_id(fm.edges[e].first, 1, n); };
  auto end_b = [&](std::size_t e) { return lift_id(fm.edges[e].second, 2, n); };

  const std::size_t limit = 4 * (fm.edges.size() + static_cast<std::size_t>(2 * n)) + 16;
  for (std::size_t step = 0; step < limit; ++step) {
    std::vector<Rational> w = vertex_weights(fm, lift);
    std::vector<std::vector<HEdge>> adj(static_cast<std::size_t>(2 * n));
    std::vector<char> in_h(static_cast<std::size_t>(2 * n), 0);
    bool any_open = false;
    for (std::size_t e = 0; e < fm.edges.size(); ++e) {
      if (!fractional(fm.weights[e])) continue;
      any_open = true;
      const int a = end_a(e);
      const int b = end_b(e);
      adj[static_cast<std::size_t>(a)].push_back(HEdge{b, static_cast<int>(e)});
      adj[static_cast<std::size_t>(b)].push_back(HEdge{a, static_cast<int>(e)});
      in_h[static_cast<std::size_t>(a)] = in_h[static_cast<std::size_t>(b)] = 1;
    }
    if (!any_open) break;
    // fake paths through the open vertices of each clump, ascending
    for (int i = 0; i < s; ++i) {
      const Clump& c = lift.clumps()[static_cast<std::size_t>(i)];
      std::vector<int> open;
      for (int v : c.bottom) {
        if (fractional(w[static_cast<std::size_t>(v)])) open.push_back(v);
      }
      for (int v : c.top) {
        if (fractional(w[static_cast<std::size_t>(v)])) open.push_back(v);
      }
      std::sort(open.begin(), open.end());
      for (std::size_t k = 1; k < open.size(); ++k) {
        adj[static_cast<std::size_t>(open[k - 1])].push_back(HEdge{open[k], -1});
        adj[static_cast<std::size_t>(open[k])].push_back(HEdge{open[k - 1], -1});
      }
    }
    std::vector<int> nodes;
    for (int v = 0; v < 2 * n; ++v) {
      if (in_h[static_cast<std::size_t>(v)]) nodes.push_back(v);
    }

    Trail trail;
    if (auto cyc = find_cycle(adj, nodes)) {
      trail = *cyc;
    } else {
      trail = leaf_path(adj, nodes);
    }

    // direction of each open edge along the trail: +1 when walked from its
    // copy-1 end to its copy-2 end
    std::vector<int> edge_dir(fm.edges.size(), 0);
    std::vector<int> vertex_delta(static_cast<std::size_t>(2 * n), 0);
    for (std::size_t k = 0; k < trail.edges.size(); ++k) {
      const int e = trail.edges[k];
      if (e < 0) continue;
      const int from = trail.vertices[k];
      const int dir = (from == end_a(static_cast<std::size_t>(e))) ? 1 : -1;
      edge_dir[static_cast<std::size_t>(e)] = dir;
      vertex_delta[static_cast<std::size_t>(end_a(static_cast<std::size_t>(e)))] += dir;
      vertex_delta[static_cast<std::size_t>(end_b(static_cast<std::size_t>(e)))] += dir;
    }
    std::vector<int> touched = trail.vertices;
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

    const std::vector<Rational> before = [&] {
      std::vector<Rational> out(static_cast<std::size_t>(s), Rational(0));
      for (int i = 0; i < s; ++i) {
        const Clump& c = lift.clumps()[static_cast<std::size_t>(i)];
        Rational wt(0);
        Rational wb(0);
        for (int v : c.top) wt += w[static_cast<std::size_t>(v)];
        for (int v : c.bottom) wb += w[static_cast<std::size_t>(v)];
        out[static_cast<std::size_t>(i)] = (Rational(static_cast<std::int64_t>(c.top.size())) - wt) -
                                           (Rational(static_cast<std::int64_t>(c.bottom.size())) - wb);
      }
      return out;
    }();

    // per-clump change of the signed imbalance per unit lambda
    std::vector<int> delta_s(static_cast<std::size_t>(s), 0);
    for (int v : touched) {
      const int d = vertex_delta[static_cast<std::size_t>(v)];
      if (d == 0) continue;
      const int c = lift.clump_of(v);
      delta_s[static_cast<std::size_t>(c)] += lift_copy(v, n) == 1 ? d : -d;
    }

    int direction = 1;
    if (!trail.cycle) {
      auto slope = [&](int dir) {
        int total = 0;
        for (int i = 0; i < s; ++i) {
          const int ds = delta_s[static_cast<std::size_t>(i)] * dir;
          const int sg = sign(before[static_cast<std::size_t>(i)]);
          total += sg != 0 ? sg * ds : std::abs(ds);
        }
        return total;
      };
      if (slope(1) > 0) direction = -1;
      if (slope(direction) > 0) {
        throw Error(ErrorCode::NotAlmostBalancing, "no shift direction keeps the imbalance from growing");
      }
    }

    std::optional<Rational> lambda;
    auto bound = [&](const Rational& value) {
      if (!lambda || value < *lambda) lambda = value;
    };
    for (std::size_t e = 0; e < fm.edges.size(); ++e) {
      const int d = edge_dir[e] * direction;
      if (d > 0) bound(Rational(1) - fm.weights[e]);
      if (d < 0) bound(fm.weights[e]);
    }
    for (int v : touched) {
      const int d = vertex_delta[static_cast<std::size_t>(v)] * direction;
      if (d > 0) bound((Rational(1) - w[static_cast<std::size_t>(v)]) / d);
      if (d < 0) bound(w[static_cast<std::size_t>(v)] / (-d));
    }
    if (!trail.cycle) {
      for (int i = 0; i < s; ++i) {
        const int ds = delta_s[static_cast<std::size_t>(i)] * direction;
        const Rational& b = before[static_cast<std::size_t>(i)];
        if (ds != 0 && sign(b) != 0 && sign(b) * ds < 0) bound(abs(b) / std::abs(ds));
      }
    }
    if (!lambda || *lambda <= Rational(0)) {
      throw Error(ErrorCode::NotAlmostBalancing, "rounding step made no progress");
    }
    for (std::size_t e = 0; e < fm.edges.size(); ++e) {
      if (edge_dir[e] != 0) fm.weights[e] += *lambda * (edge_dir[e] * direction);
    }
    if (observer) {
      RoundingStep info;
      info.cycle = trail.cycle;
      info.lambda = *lambda;
      info.disb_before = before;
      for (int i = 0; i < s; ++i) info.disb_after.push_back(signed_disb(fm, lift, i));
      observer(info);
    }
  }
  for (const auto& wt : fm.weights) {
    if (fractional(wt)) throw Error(ErrorCode::NotAlmostBalancing, "rounding did not terminate");
  }
  const Rational end_disb = total_disb(fm, lift);
  if (end_disb != Rational(0)) {
    throw Error(ErrorCode::NotAlmostBalancing, "rounded matching is not balancing", {{"disb", format_rational(end_disb)}});
  }
  return fm;
}

}  // namespace cyclecut
