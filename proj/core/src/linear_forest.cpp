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

#include "cyclecut/linear_forest.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "cyclecut/error.hpp"
#include "log.hpp"

namespace cyclecut {

VertexList LinearForest::vertices() const {
  VertexList out;
  for (const auto& p : paths) out.insert(out.end(), p.begin(), p.end());
  return sorted_unique(std::move(out));
}

VertexList LinearForest::leaves() const {
  VertexList out;
  for (const auto& p : paths) {
    if (p.empty()) continue;
    out.push_back(p.front());
    if (p.size() > 1) out.push_back(p.back());
  }
  return sorted_unique(std::move(out));
}

VertexList LinearForest::interior() const {
  VertexList out;
  for (const auto& p : paths) {
    for (std::size_t i = 1; i + 1 < p.size(); ++i) out.push_back(p[i]);
  }
  return sorted_unique(std::move(out));
}

LinearForest pull_back(const BalancingMatching& m, const LiftGraph& lift) {
  const int n = lift.num_base();
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (auto [u, v] : m.edges) {
    if (!lift.base().has_edge(u, v)) throw Error(ErrorCode::InvalidArgument, "matching edge is not an edge of G");
    const int ru = find(u);
    const int rv = find(v);
    if (ru == rv) {
      throw Error(ErrorCode::CycleDetected, "pulled-back edges close a cycle", {{"edge", {u, v}}});
    }
    parent[static_cast<std::size_t>(ru)] = rv;
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
    if (adj[static_cast<std::size_t>(u)].size() > 2 || adj[static_cast<std::size_t>(v)].size() > 2) {
      throw Error(ErrorCode::CycleDetected, "pulled-back vertex has degree above two", {{"edge", {u, v}}});
    }
  }
  LinearForest f;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (Vertex s = 0; s < n; ++s) {
    if (adj[static_cast<std::size_t>(s)].size() != 1 || used[static_cast<std::size_t>(s)]) continue;
    Path p{s};
    used[static_cast<std::size_t>(s)] = 1;
    Vertex prev = -1;
    Vertex cur = s;
    while (true) {
      Vertex next = -1;
      for (Vertex u : adj[static_cast<std::size_t>(cur)]) {
        if (u != prev) next = u;
      }
      if (next < 0) break;
      p.push_back(next);
      used[static_cast<std::size_t>(next)] = 1;
      prev = cur;
      cur = next;
    }
    f.paths.push_back(std::move(p));
  }
  return f;
}

Path short_connect(const Graph& g, std::span<const Vertex> a, Vertex x, Vertex y, std::span<const Vertex> forbidden,
                   const Rational& zeta, std::span<const Vertex> side_x) {
  const int n = g.num_vertices();
  auto allowed = make_mask(n, a);
  const auto in_x = make_mask(n, side_x);
  const bool sided = !side_x.empty();
  std::size_t blocked = 0;
  for (Vertex v : forbidden) {
    if (allowed[static_cast<std::size_t>(v)]) ++blocked;
    allowed[static_cast<std::size_t>(v)] = 0;
  }
  if (!g.contains(x) || !g.contains(y) || x == y || !allowed[static_cast<std::size_t>(x)] || !allowed[static_cast<std::size_t>(y)]) {
    throw Error(ErrorCode::InvalidArgument, "short_connect needs distinct ends inside A and outside the forbidden set");
  }
  if (Rational(static_cast<std::int64_t>(blocked)) * 6 > zeta * Rational(static_cast<std::int64_t>(a.size()))) {
    logger()->debug("short_connect: {} forbidden vertices exceed zeta/6 of |A| = {}", blocked, a.size());
  }
  std::vector<Vertex> prev(static_cast<std::size_t>(n), -2);
  std::queue<Vertex> queue;
  queue.push(x);
  prev[static_cast<std::size_t>(x)] = -1;
  while (!queue.empty() && prev[static_cast<std::size_t>(y)] == -2) {
    const Vertex v = queue.front();
    queue.pop();
    for (Vertex u : g.neighbors(v)) {
      if (!allowed[static_cast<std::size_t>(u)] || prev[static_cast<std::size_t>(u)] != -2) continue;
      if (sided && in_x[static_cast<std::size_t>(u)] == in_x[static_cast<std::size_t>(v)]) continue;
      prev[static_cast<std::size_t>(u)] = v;
      queue.push(u);
    }
  }
  if (prev[static_cast<std::size_t>(y)] == -2) {
    throw Error(ErrorCode::Disconnected, "no path between " + std::to_string(x) + " and " + std::to_string(y),
                {{"x", x}, {"y", y}});
  }
  Path p;
  for (Vertex v = y; v != -1; v = prev[static_cast<std::size_t>(v)]) p.push_back(v);
  std::reverse(p.begin(), p.end());
  const auto bound = ceil(Rational(3) / zeta);
  if (static_cast<std::int64_t>(p.size()) - 1 > bound) {
    logger()->debug("short_connect: path of length {} exceeds {}", p.size() - 1, bound);
  }
  return p;
}

namespace {

// component index of every forest vertex, -1 elsewhere
std::vector<int> component_of(int n, const LinearForest& f) {
  std::vector<int> out(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < f.paths.size(); ++i) {
    for (Vertex v : f.paths[i]) out[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  return out;
}

std::vector<VertexList> leaves_per_cluster(const Decomposition& dec, const LinearForest& f) {
  const auto owner = dec.cluster_of();
  std::vector<VertexList> out(dec.clusters.size());
  for (Vertex v : f.leaves()) out[static_cast<std::size_t>(owner[static_cast<std::size_t>(v)])].push_back(v);
  return out;
}

}  // namespace

LinearForest merge_leaves(const Graph& g, const Decomposition& dec, const LinearForest& f_in) {
  LinearForest f = f_in;
  const int n = g.num_vertices();
  for (std::size_t guard = 0; guard <= static_cast<std::size_t>(n); ++guard) {
    const auto per_cluster = leaves_per_cluster(dec, f);
    std::optional<std::size_t> target;
    for (std::size_t i = 0; i < per_cluster.size(); ++i) {
      if (per_cluster[i].size() % 2 != 0) {
        throw Error(ErrorCode::InvalidArgument, "cluster holds an odd number of leaves", {{"cluster", i}});
      }
      if (per_cluster[i].size() >= 4 && !target) target = i;
    }
    if (!target) return f;

    const auto comp = component_of(n, f);
    std::vector<std::pair<int, Vertex>> ordered;
    for (Vertex v : per_cluster[*target]) ordered.emplace_back(comp[static_cast<std::size_t>(v)], v);
    std::sort(ordered.begin(), ordered.end());
    const VertexList used = f.vertices();
    bool merged = false;
    for (std::size_t i = 0; i < ordered.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < ordered.size() && !merged; ++j) {
        if (ordered[i].first == ordered[j].first) continue;
        const Vertex x = ordered[i].second;
        const Vertex y = ordered[j].second;
        VertexList forbidden;
        for (Vertex v : used) {
          if (v != x && v != y) forbidden.push_back(v);
        }
        Path link;
        try {
          const Cluster& c = dec.clusters[*target];
          // cross edges only, so the link keeps the residual sides in step
          link = short_connect(g, c.vertices, x, y, forbidden, dec.ladder.zeta,
                               c.is_near() ? std::span<const Vertex>(c.x) : std::span<const Vertex>());
        } catch (const Error& e) {
          if (e.code() != ErrorCode::Disconnected) throw;
          continue;
        }
        Path px = f.paths[static_cast<std::size_t>(ordered[i].first)];
        Path py = f.paths[static_cast<std::size_t>(ordered[j].first)];
        if (px.back() != x) std::reverse(px.begin(), px.end());
        if (py.front() != y) std::reverse(py.begin(), py.end());
        Path joined = px;
        joined.insert(joined.end(), link.begin() + 1, link.end() - 1);
        joined.insert(joined.end(), py.begin(), py.end());
        const auto hi = static_cast<std::size_t>(std::max(ordered[i].first, ordered[j].first));
        const auto lo = static_cast<std::size_t>(std::min(ordered[i].first, ordered[j].first));
        f.paths.erase(f.paths.begin() + static_cast<long>(hi));
        f.paths[lo] = std::move(joined);
        merged = true;
      }
    }
    if (!merged) {
      throw Error(ErrorCode::MergeFailed, "no leaf pair of the cluster can be connected",
                  {{"cluster", *target}, {"leaves", per_cluster[*target]}});
    }
  }
  return f;
}

LinearForest fix_parity(const Graph& g, const Decomposition& dec, const LinearForest& f_in) {
  LinearForest f = f_in;
  const int n = g.num_vertices();
  const auto per_cluster = leaves_per_cluster(dec, f);
  for (std::size_t i = 0; i < dec.clusters.size(); ++i) {
    const Cluster& c = dec.clusters[i];
    if (!c.is_near() || per_cluster[i].size() != 2) continue;
    const auto in_x = make_mask(n, c.x);
    const Vertex l0 = per_cluster[i][0];
    const Vertex l1 = per_cluster[i][1];
    const bool same_side = in_x[static_cast<std::size_t>(l0)] == in_x[static_cast<std::size_t>(l1)];
    if (!same_side) continue;
    const VertexList& opposite = in_x[static_cast<std::size_t>(l0)] ? c.y : c.x;
    const auto opp_mask = make_mask(n, opposite);
    const auto used = make_mask(n, f.vertices());
    bool fixed = false;
    for (Vertex leaf : {l0, l1}) {
      for (Vertex y : g.neighbors(leaf)) {
        if (!opp_mask[static_cast<std::size_t>(y)] || used[static_cast<std::size_t>(y)]) continue;
        for (auto& p : f.paths) {
          if (p.front() == leaf) {
            p.insert(p.begin(), y);
            fixed = true;
          } else if (p.back() == leaf) {
            p.push_back(y);
            fixed = true;
          }
          if (fixed) break;
        }
        break;
      }
      if (fixed) break;
    }
    if (!fixed) {
      throw Error(ErrorCode::NoExtensionVertex, "both same-side leaves have no free opposite-side neighbour",
                  {{"cluster", i}, {"leaves", {l0, l1}}});
    }
  }
  return f;
}

ForestReport make_forest_report(const Graph& g, const Decomposition& dec, const LinearForest& f, const Rational& xi,
                                int h0_size) {
  const int n = g.num_vertices();
  ForestReport report;
  const VertexList covered = f.vertices();
  report.size = static_cast<int>(covered.size());
  report.h0_size = h0_size;
  report.a = Rational(report.size) <= xi * Rational(n);
  report.b = std::all_of(f.paths.begin(), f.paths.end(), [](const Path& p) { return p.size() >= 2; });
  const auto per_cluster = leaves_per_cluster(dec, f);
  const auto used = make_mask(n, covered);
  report.c = report.d = report.e = true;
  for (std::size_t i = 0; i < dec.clusters.size(); ++i) {
    const Cluster& c = dec.clusters[i];
    const int leaves = static_cast<int>(per_cluster[i].size());
    report.leaves.push_back(leaves);
    if (leaves != 0 && leaves != 2) report.c = false;
    int residual = 0;
    if (c.is_near()) {
      int x_left = 0;
      int y_left = 0;
      for (Vertex v : c.x) x_left += !used[static_cast<std::size_t>(v)];
      for (Vertex v : c.y) y_left += !used[static_cast<std::size_t>(v)];
      residual = x_left - y_left;
      if (residual != 0) report.e = false;
      if (leaves == 2) {
        const auto in_x = make_mask(n, c.x);
        if (in_x[static_cast<std::size_t>(per_cluster[i][0])] == in_x[static_cast<std::size_t>(per_cluster[i][1])]) report.d = false;
      } else if (leaves != 0) {
        report.d = false;
      }
    }
    report.residual.push_back(residual);
  }
  const Rational size_bound =
      Rational(h0_size) * (Rational(3) / (Rational(2) * dec.ladder.zeta) + Rational(1)) +
      Rational(static_cast<std::int64_t>(dec.clusters.size()));
  report.size_bound = Rational(report.size) <= size_bound;
  return report;
}

ForestResult build_balancing_forest(const Graph& g, const Decomposition& dec, std::uint64_t seed,
                                    const ForestOptions& options) {
  const LiftGraph lift = build_lift(g, dec);
  ForestResult result;
  if (total_imbalance(lift) == 0) {
    result.report = make_forest_report(g, dec, result.forest, options.xi, 0);
    return result;
  }
  std::optional<Error> last;
  const int attempts = std::max(1, std::min(options.balance.max_retries, 10));
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt);
    BalanceResult balance = balance_clumps(g, dec, s, options.balance);
    try {
      LinearForest h0 = pull_back(balance.matching, lift);
      const int h0_size = static_cast<int>(h0.vertices().size());
      LinearForest merged = merge_leaves(g, dec, h0);
      LinearForest fixed = fix_parity(g, dec, merged);
      result.forest = std::move(fixed);
      result.report = make_forest_report(g, dec, result.forest, options.xi, h0_size);
      result.balance = std::move(balance);
      result.retries = attempt;
      return result;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MergeFailed && e.code() != ErrorCode::NoExtensionVertex &&
          e.code() != ErrorCode::CycleDetected) {
        throw;
      }
      logger()->debug("forest attempt {} failed: {}", attempt, e.what());
      last = e;
    }
  }
  throw Error(last->code(), std::string("forest construction failed after retries: ") + last->what(),
              {{"retries", attempts}, {"cause", last->detail()}});
}

}  // namespace cyclecut
