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
#include <cmath>
#include <deque>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

#include "cyclecut/error.hpp"
#include "cyclecut/matching.hpp"
#include "local_graph.hpp"
#include "log.hpp"

namespace cyclecut {

std::size_t CycleFactor::num_vertices() const {
  std::size_t k = 0;
  for (const auto& c : cycles) k += c.size();
  return k;
}

Prefactor::Prefactor(const CycleFactor& factor, Vertex root, int n)
    : succ_(static_cast<std::size_t>(n), -1),
      pred_(static_cast<std::size_t>(n), -1),
      member_(static_cast<std::size_t>(n), 0),
      root_(root) {
  for (const auto& c : factor.cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Vertex u = c[i];
      const Vertex v = c[(i + 1) % c.size()];
      if (u < 0 || u >= n || member_[static_cast<std::size_t>(u)]) {
        throw Error(ErrorCode::InvalidArgument, "cycle factor repeats or misplaces a vertex", {{"vertex", u}});
      }
      member_[static_cast<std::size_t>(u)] = 1;
      succ_[static_cast<std::size_t>(u)] = v;
      pred_[static_cast<std::size_t>(v)] = u;
    }
  }
  if (root < 0 || root >= n || !member_[static_cast<std::size_t>(root)]) {
    throw Error(ErrorCode::InvalidArgument, "prefactor root is not covered by the factor", {{"root", root}});
  }
  pivot_ = pred_[static_cast<std::size_t>(root)];
  succ_[static_cast<std::size_t>(pivot_)] = -1;
  pred_[static_cast<std::size_t>(root)] = -1;
}

Path Prefactor::root_path() const {
  Path p;
  for (Vertex v = root_; v != -1; v = succ_[static_cast<std::size_t>(v)]) p.push_back(v);
  return p;
}

bool Prefactor::is_valid_rotation(const Graph& g, Vertex x, int guard, const std::optional<Sides>& sides) const {
  if (!g.contains(x) || !member_[static_cast<std::size_t>(x)] || x == root_ || x == pivot_) return false;
  if (!g.has_edge(pivot_, x)) return false;
  if (sides) {
    const bool px = std::binary_search(sides->x.begin(), sides->x.end(), pivot_);
    const bool xx = std::binary_search(sides->x.begin(), sides->x.end(), x);
    if (px == xx) return false;
  }
  if (std::find(new_heads_.begin(), new_heads_.end(), x) != new_heads_.end()) return false;
  const Path p = root_path();
  const auto it = std::find(p.begin(), p.end(), x);
  if (it != p.end()) {
    const auto i = static_cast<int>(it - p.begin());
    const auto len = static_cast<int>(p.size());
    if (i < guard || i >= len - guard) return false;
  }
  return true;
}

void Prefactor::rotate(Vertex x) {
  const Vertex px = pred_[static_cast<std::size_t>(x)];
  if (px < 0) throw Error(ErrorCode::InvalidArgument, "rotation target has no incoming arc", {{"x", x}});
  succ_[static_cast<std::size_t>(px)] = -1;
  succ_[static_cast<std::size_t>(pivot_)] = x;
  pred_[static_cast<std::size_t>(x)] = pivot_;
  new_heads_.push_back(x);
  pivot_ = px;
}

CycleFactor Prefactor::close() const {
  auto succ = succ_;
  succ[static_cast<std::size_t>(pivot_)] = root_;
  CycleFactor out;
  std::vector<char> seen(succ.size(), 0);
  for (std::size_t s = 0; s < succ.size(); ++s) {
    if (!member_[s] || seen[s]) continue;
    std::vector<Vertex> cycle;
    for (auto v = static_cast<Vertex>(s); !seen[static_cast<std::size_t>(v)]; v = succ[static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(v)] = 1;
      cycle.push_back(v);
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

bool Prefactor::well_formed() const {
  std::size_t members = 0;
  for (std::size_t v = 0; v < succ_.size(); ++v) {
    if (!member_[v]) {
      if (succ_[v] != -1 || pred_[v] != -1) return false;
      continue;
    }
    ++members;
    const Vertex s = succ_[v];
    const Vertex p = pred_[v];
    if (s == -1 && static_cast<Vertex>(v) != pivot_) return false;
    if (p == -1 && static_cast<Vertex>(v) != root_) return false;
    if (s != -1 && pred_[static_cast<std::size_t>(s)] != static_cast<Vertex>(v)) return false;
    if (p != -1 && succ_[static_cast<std::size_t>(p)] != static_cast<Vertex>(v)) return false;
  }
  const Path p = root_path();
  return !p.empty() && p.back() == pivot_ && p.size() <= members;
}

std::string rotation_trace_dot(const RotationTrace& trace) {
  std::ostringstream out;
  out << "digraph rotations {\n";
  for (std::size_t t = 0; t < trace.trees.size(); ++t) {
    const auto& tree = trace.trees[t];
    out << "  subgraph cluster_" << t << " {\n    label=\"root " << tree.root << "\";\n";
    out << "    t" << t << "_" << tree.root << " [label=\"" << tree.root << "\", shape=box];\n";
    if (tree.closed_at >= 0) {
      out << "    t" << t << "_" << tree.closed_at << " [label=\"" << tree.closed_at << "\", shape=doublecircle];\n";
    }
    for (auto [a, b] : tree.edges) {
      out << "    t" << t << "_" << a << " -> t" << t << "_" << b << ";\n";
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

using detail::LocalGraph;

std::optional<Sides> sorted_sides(const std::optional<Sides>& sides) {
  if (!sides) return std::nullopt;
  return Sides{sorted_unique(sides->x), sorted_unique(sides->y)};
}

// Shortest path from a to b through allowed interior vertices of lg.
std::optional<std::vector<int>> local_bfs(const LocalGraph& lg, int a, int b, const std::vector<char>& allowed) {
  std::vector<int> prev(static_cast<std::size_t>(lg.size()), -2);
  std::queue<int> queue;
  queue.push(a);
  prev[static_cast<std::size_t>(a)] = -1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (int u : lg.adj(v)) {
      if (prev[static_cast<std::size_t>(u)] != -2) continue;
      if (u != b && !allowed[static_cast<std::size_t>(u)]) continue;
      prev[static_cast<std::size_t>(u)] = v;
      if (u == b) {
        std::vector<int> p;
        for (int w = b; w != -1; w = prev[static_cast<std::size_t>(w)]) p.push_back(w);
        std::reverse(p.begin(), p.end());
        return p;
      }
      queue.push(u);
    }
  }
  return std::nullopt;
}

}  // namespace

VertexList select_reservoir(const Graph& g, std::span<const Vertex> working, std::span<const Vertex> excluded,
                            std::uint64_t seed, const std::optional<Sides>& sides_in) {
  const auto sides = sorted_sides(sides_in);
  const VertexList pool = set_difference(sorted_unique(VertexList(working.begin(), working.end())),
                                         sorted_unique(VertexList(excluded.begin(), excluded.end())));
  const auto m = static_cast<int>(pool.size());
  const int k = std::max(1, static_cast<int>(std::ceil(std::log(std::max(2, m)))));
  if (m < 4) throw Error(ErrorCode::ReservoirFailed, "working set too small for a reservoir", {{"m", m}});
  const LocalGraph lg(g, pool, sides);
  std::size_t min_deg = pool.size();
  for (int i = 0; i < m; ++i) min_deg = std::min(min_deg, lg.adj(i).size());
  if (static_cast<int>(min_deg) < k) {
    throw Error(ErrorCode::ReservoirFailed, "minimum degree below the hub requirement",
                {{"min_degree", min_deg}, {"k", k}});
  }
  const double p = std::min(1.0, 1.5 * k / static_cast<double>(min_deg));
  if (p * m > m / 3.0 || p * m < 4.0) {
    throw Error(ErrorCode::ReservoirFailed, "hub density does not fit the working set",
                {{"m", m}, {"k", k}, {"p", p}});
  }

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<int> hubs;
  bool ok = false;
  for (int attempt = 0; attempt < 50 && !ok; ++attempt) {
    hubs.clear();
    for (int i = 0; i < m; ++i) {
      if (coin(rng)) hubs.push_back(i);
    }
    if (sides) {
      std::vector<int> hx;
      std::vector<int> hy;
      for (int h : hubs) (lg.side(h) == 0 ? hx : hy).push_back(h);
      std::shuffle(hx.begin(), hx.end(), rng);
      std::shuffle(hy.begin(), hy.end(), rng);
      const std::size_t keep = std::min(hx.size(), hy.size());
      hx.resize(keep);
      hy.resize(keep);
      hubs.clear();
      for (std::size_t i = 0; i < keep; ++i) {
        hubs.push_back(hx[i]);
        hubs.push_back(hy[i]);
      }
    } else {
      std::shuffle(hubs.begin(), hubs.end(), rng);
    }
    if (hubs.size() < 4) continue;
    std::vector<char> is_hub(static_cast<std::size_t>(m), 0);
    for (int h : hubs) is_hub[static_cast<std::size_t>(h)] = 1;
    ok = true;
    for (int i = 0; i < m && ok; ++i) {
      int c = 0;
      for (int u : lg.adj(i)) c += is_hub[static_cast<std::size_t>(u)];
      ok = c >= k;
    }
  }
  if (!ok) throw Error(ErrorCode::ReservoirFailed, "hub sampling did not reach the neighbour requirement", {{"k", k}});

  // consecutive hubs (an X hub then a Y hub when sided) are joined by short paths
  std::vector<char> taken(static_cast<std::size_t>(m), 0);
  for (int h : hubs) taken[static_cast<std::size_t>(h)] = 1;
  VertexList reservoir;
  for (int h : hubs) reservoir.push_back(lg.global(h));
  for (std::size_t i = 0; i + 1 < hubs.size(); i += 2) {
    std::vector<char> allowed(static_cast<std::size_t>(m), 0);
    for (int v = 0; v < m; ++v) allowed[static_cast<std::size_t>(v)] = !taken[static_cast<std::size_t>(v)];
    const auto path = local_bfs(lg, hubs[i], hubs[i + 1], allowed);
    if (!path) continue;
    for (std::size_t j = 1; j + 1 < path->size(); ++j) {
      taken[static_cast<std::size_t>((*path)[j])] = 1;
      reservoir.push_back(lg.global((*path)[j]));
    }
  }
  return sorted_unique(std::move(reservoir));
}

CycleFactor initial_cycle_factor(const Graph& g, std::span<const Vertex> working, const std::optional<Sides>& sides_in) {
  const VertexList w = sorted_unique(VertexList(working.begin(), working.end()));
  CycleFactor out;
  if (!sides_in) {
    for (Vertex v : w) out.cycles.push_back({v});
    return out;
  }
  const auto sides = sorted_sides(sides_in);
  const LocalGraph lg(g, w, sides);
  std::vector<int> left;
  std::vector<int> right_index(static_cast<std::size_t>(lg.size()), -1);
  std::vector<int> right;
  for (int i = 0; i < lg.size(); ++i) {
    if (lg.side(i) == 0) {
      left.push_back(i);
    } else if (lg.side(i) == 1) {
      right_index[static_cast<std::size_t>(i)] = static_cast<int>(right.size());
      right.push_back(i);
    } else {
      throw Error(ErrorCode::InvalidArgument, "working vertex lies on neither side", {{"vertex", lg.global(i)}});
    }
  }
  std::vector<std::vector<int>> left_adj(left.size());
  for (std::size_t a = 0; a < left.size(); ++a) {
    for (int u : lg.adj(left[a])) left_adj[a].push_back(right_index[static_cast<std::size_t>(u)]);
  }
  const BipartiteMatching mm = hopcroft_karp(left_adj, static_cast<int>(right.size()));
  if (left.size() != right.size() || mm.size != static_cast<int>(left.size())) {
    VertexList hall;
    for (int a : hall_violator(left_adj, mm)) hall.push_back(lg.global(left[static_cast<std::size_t>(a)]));
    throw Error(ErrorCode::NoPerfectMatching, "working set has no perfect matching",
                {{"matched", mm.size}, {"x_size", left.size()}, {"y_size", right.size()}, {"hall_set", hall}});
  }
  for (std::size_t a = 0; a < left.size(); ++a) {
    out.cycles.push_back({lg.global(left[a]), lg.global(right[static_cast<std::size_t>(mm.left_mate[a])])});
  }
  return out;
}

CycleFactor reduce_cycle_factor(const Graph& g, const CycleFactor& factor, int min_size,
                                const std::optional<Sides>& sides_in, RotationTrace* trace) {
  const auto sides = sorted_sides(sides_in);
  const int n = g.num_vertices();
  const auto total = static_cast<int>(factor.num_vertices());
  auto count_small = [&](const CycleFactor& f) {
    return std::count_if(f.cycles.begin(), f.cycles.end(),
                         [&](const auto& c) { return static_cast<int>(c.size()) < min_size; });
  };
  auto closable = [&](Vertex pivot, Vertex root) {
    if (pivot == root || !g.has_edge(pivot, root)) return false;
    if (!sides) return true;
    return std::binary_search(sides->x.begin(), sides->x.end(), pivot) !=
           std::binary_search(sides->x.begin(), sides->x.end(), root);
  };
  const int zone = (total + 7) / 8;
  constexpr std::size_t kStateLimit = 4000;

  CycleFactor current = factor;
  while (true) {
    const auto small = count_small(current);
    if (small == 0 || current.cycles.size() <= 1) return current;
    bool improved = false;
    CycleFactor next;
    for (const auto& c : current.cycles) {
      if (static_cast<int>(c.size()) >= min_size) continue;
      for (Vertex a : c) {
        RotationTrace::Tree tree;
        tree.root = a;
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::deque<Prefactor> queue;
        queue.emplace_back(current, a, n);
        seen[static_cast<std::size_t>(queue.front().pivot())] = 1;
        std::size_t states = 0;
        while (!queue.empty() && states < kStateLimit) {
          Prefactor pf = std::move(queue.front());
          queue.pop_front();
          ++states;
          if (closable(pf.pivot(), a)) {
            CycleFactor closed = pf.close();
            if (count_small(closed) < small) {
              tree.closed_at = pf.pivot();
              next = std::move(closed);
              improved = true;
              break;
            }
          }
          const int guard = std::min(zone, static_cast<int>(pf.root_path().size()) / 3);
          for (Vertex x : g.neighbors(pf.pivot())) {
            if (!pf.is_valid_rotation(g, x, guard, sides)) continue;
            Prefactor child = pf;
            child.rotate(x);
            if (seen[static_cast<std::size_t>(child.pivot())]) continue;
            seen[static_cast<std::size_t>(child.pivot())] = 1;
            tree.edges.emplace_back(pf.pivot(), child.pivot());
            queue.push_back(std::move(child));
          }
        }
        if (trace) trace->trees.push_back(std::move(tree));
        if (improved) break;
      }
      if (improved) break;
    }
    if (!improved) {
      throw Error(ErrorCode::RotationExhausted, "no rotation sequence closes a small component",
                  {{"min_size", min_size}, {"small_components", small}});
    }
    current = std::move(next);
  }
}

Path connect_and_absorb(const Graph& g, std::span<const Vertex> working, const CycleFactor& factor,
                        std::span<const Vertex> reservoir, const Path& q, Vertex x_star, Vertex y_star,
                        const std::optional<Sides>& sides_in, std::uint64_t seed) {
  const auto sides = sorted_sides(sides_in);
  const LocalGraph lg(g, working, sides);
  const int m = lg.size();
  std::vector<int> role(static_cast<std::size_t>(m), -1);  // 0 reservoir, 1 Q, 2 factor, 3 end
  auto claim = [&](Vertex v, int r) {
    if (!lg.contains(v)) throw Error(ErrorCode::InvalidArgument, "vertex outside the working set", {{"vertex", v}});
    auto& slot = role[static_cast<std::size_t>(lg.local(v))];
    if (slot != -1) throw Error(ErrorCode::InvalidArgument, "connect inputs overlap", {{"vertex", v}});
    slot = r;
  };
  for (Vertex v : reservoir) claim(v, 0);
  for (Vertex v : q) claim(v, 1);
  for (const auto& c : factor.cycles) {
    for (Vertex v : c) claim(v, 2);
  }
  claim(x_star, 3);
  claim(y_star, 3);
  if (std::find(role.begin(), role.end(), -1) != role.end()) {
    throw Error(ErrorCode::InvalidArgument, "connect inputs do not cover the working set");
  }

  std::mt19937_64 rng(seed);
  std::vector<char> free_r(static_cast<std::size_t>(m), 0);
  for (Vertex v : reservoir) free_r[static_cast<std::size_t>(lg.local(v))] = 1;

  // BFS from `from` through free reservoir vertices to the first target hit
  auto connect = [&](int from, const std::vector<char>& target) -> std::optional<std::vector<int>> {
    std::vector<int> prev(static_cast<std::size_t>(m), -2);
    std::deque<int> queue{from};
    prev[static_cast<std::size_t>(from)] = -1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      std::vector<int> nbrs = lg.adj(v);
      std::shuffle(nbrs.begin(), nbrs.end(), rng);
      for (int u : nbrs) {
        if (prev[static_cast<std::size_t>(u)] != -2) continue;
        if (target[static_cast<std::size_t>(u)]) {
          std::vector<int> p{u};
          for (int w = v; w != -1; w = prev[static_cast<std::size_t>(w)]) p.push_back(w);
          std::reverse(p.begin(), p.end());
          return p;
        }
        if (!free_r[static_cast<std::size_t>(u)]) continue;
        prev[static_cast<std::size_t>(u)] = v;
        queue.push_back(u);
      }
    }
    return std::nullopt;
  };
  auto fail = [&](const char* stage) {
    return Error(ErrorCode::ConnectFailed, std::string("no reservoir connection at stage ") + stage, {{"stage", stage}});
  };
  std::vector<int> path{lg.local(x_star)};
  auto append_link = [&](const std::vector<int>& link) {
    for (std::size_t i = 1; i + 1 < link.size(); ++i) {
      free_r[static_cast<std::size_t>(link[i])] = 0;
      path.push_back(link[i]);
    }
  };

  std::vector<int> qlocal;
  for (Vertex v : q) qlocal.push_back(lg.local(v));
  if (!qlocal.empty()) {
    std::vector<char> target(static_cast<std::size_t>(m), 0);
    target[static_cast<std::size_t>(qlocal.front())] = 1;
    target[static_cast<std::size_t>(qlocal.back())] = 1;
    const auto link = connect(path.back(), target);
    if (!link) throw fail("absorbing path");
    if (link->back() != qlocal.front()) std::reverse(qlocal.begin(), qlocal.end());
    append_link(*link);
    path.insert(path.end(), qlocal.begin(), qlocal.end());
  }

  std::vector<std::vector<int>> cycles;
  for (const auto& c : factor.cycles) {
    std::vector<int> lc;
    for (Vertex v : c) lc.push_back(lg.local(v));
    cycles.push_back(std::move(lc));
  }
  std::vector<int> cycle_of(static_cast<std::size_t>(m), -1);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (int v : cycles[i]) cycle_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  std::vector<char> pending(static_cast<std::size_t>(m), 0);
  for (const auto& c : cycles) {
    for (int v : c) pending[static_cast<std::size_t>(v)] = 1;
  }
  auto score = [&](int v) {
    int s = 0;
    for (int u : lg.adj(v)) s += free_r[static_cast<std::size_t>(u)] || pending[static_cast<std::size_t>(u)];
    return s;
  };
  for (std::size_t left = cycles.size(); left > 0; --left) {
    const auto link = connect(path.back(), pending);
    if (!link) throw fail("cycle factor");
    append_link(*link);
    const int t = link->back();
    const auto& c = cycles[static_cast<std::size_t>(cycle_of[static_cast<std::size_t>(t)])];
    const auto k = c.size();
    const auto i = static_cast<std::size_t>(std::find(c.begin(), c.end(), t) - c.begin());
    for (int v : c) pending[static_cast<std::size_t>(v)] = 0;
    std::vector<int> forward;
    std::vector<int> backward;
    for (std::size_t j = 0; j < k; ++j) {
      forward.push_back(c[(i + j) % k]);
      backward.push_back(c[(i + k - j) % k]);
    }
    const auto& open = score(forward.back()) >= score(backward.back()) ? forward : backward;
    path.insert(path.end(), open.begin(), open.end());
  }

  {
    std::vector<char> target(static_cast<std::size_t>(m), 0);
    target[static_cast<std::size_t>(lg.local(y_star))] = 1;
    const auto link = connect(path.back(), target);
    if (!link) throw fail("final end");
    append_link(*link);
    path.push_back(lg.local(y_star));
  }

  // absorb leftover reservoir vertices by local reinsertion
  std::vector<int> leftover;
  for (int v = 0; v < m; ++v) {
    if (free_r[static_cast<std::size_t>(v)]) leftover.push_back(v);
  }
  auto insert_run = [&](const std::vector<int>& run) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      if (lg.has(path[i], run.front()) && lg.has(run.back(), path[i + 1])) {
        path.insert(path.begin() + static_cast<long>(i) + 1, run.begin(), run.end());
        return true;
      }
    }
    return false;
  };
  std::vector<int> stuck;
  if (!sides) {
    for (int w : leftover) {
      if (!insert_run({w})) stuck.push_back(w);
    }
  } else {
    std::vector<char> done(static_cast<std::size_t>(m), 0);
    for (int a : leftover) {
      if (done[static_cast<std::size_t>(a)]) continue;
      for (int b : leftover) {
        if (done[static_cast<std::size_t>(b)] || a == b || !lg.has(a, b)) continue;
        if (insert_run({a, b}) || insert_run({b, a})) {
          done[static_cast<std::size_t>(a)] = done[static_cast<std::size_t>(b)] = 1;
          break;
        }
      }
    }
    for (int w : leftover) {
      if (!done[static_cast<std::size_t>(w)]) stuck.push_back(w);
    }
  }

  if (!stuck.empty()) {
    // rotation repair from the prefix that stops short of y*
    std::vector<int> start(path.begin(), path.end() - 1);
    long budget = 40L * m * m + 10000;
    const auto repaired = detail::posa_local(lg, lg.local(x_star), lg.local(y_star), start, rng, budget);
    if (!repaired) {
      VertexList bad;
      for (int w : stuck) bad.push_back(lg.global(w));
      throw Error(ErrorCode::AbsorbFailed, "reservoir leftovers could not be absorbed", {{"leftover", bad}});
    }
    path = *repaired;
  }
  return lg.to_global(path);
}

namespace detail {

Path reservoir_ham_path(const Graph& g, std::span<const Vertex> working, Vertex x, Vertex y,
                    const std::optional<Sides>& sides_in, std::uint64_t seed) {
  const auto sides = sorted_sides(sides_in);
  const LocalGraph lg(g, working, sides);
  const int m = lg.size();
  std::mt19937_64 rng(seed);
  const int lx = lg.local(x);
  const int ly = lg.local(y);

  // H_3 -> H_4: carve out the short path Q away from the ends
  std::vector<int> q;
  {
    const int target = std::max(2, m / 10);
    std::vector<int> start;
    for (int v = 0; v < m; ++v) {
      if (v != lx && v != ly) start.push_back(v);
    }
    if (start.empty()) throw Error(ErrorCode::ConnectFailed, "no room for an absorbing path");
    std::vector<char> used(static_cast<std::size_t>(m), 0);
    used[static_cast<std::size_t>(lx)] = used[static_cast<std::size_t>(ly)] = 1;
    q.push_back(start[std::uniform_int_distribution<std::size_t>(0, start.size() - 1)(rng)]);
    used[static_cast<std::size_t>(q.back())] = 1;
    while (static_cast<int>(q.size()) < target) {
      std::vector<int> next;
      for (int u : lg.adj(q.back())) {
        if (!used[static_cast<std::size_t>(u)]) next.push_back(u);
      }
      if (next.empty()) break;
      q.push_back(next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)]);
      used[static_cast<std::size_t>(q.back())] = 1;
    }
    if (sides && q.size() % 2 == 1) q.pop_back();
    if (q.empty()) throw Error(ErrorCode::ConnectFailed, "absorbing path could not be started");
  }
  const Path qg = lg.to_global(q);

  // H_4 -> H_5: reservoir, then the factor on what is left
  VertexList h4;
  for (int v = 0; v < m; ++v) {
    if (std::find(q.begin(), q.end(), v) == q.end()) h4.push_back(lg.global(v));
  }
  const VertexList excluded = sorted_unique({qg.front(), qg.back(), x, y});
  const VertexList reservoir = select_reservoir(g, h4, excluded, rng(), sides);
  VertexList h5 = set_difference(h4, reservoir);
  h5 = set_difference(h5, sorted_unique({x, y}));

  CycleFactor factor = initial_cycle_factor(g, h5, sides);
  const int h5_size = static_cast<int>(h5.size());
  for (int min_size = std::min(h5_size, std::max(4, (h5_size + 7) / 8)); min_size >= 1; --min_size) {
    try {
      factor = reduce_cycle_factor(g, factor, min_size, sides);
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RotationExhausted) throw;
      logger()->debug("cycle reduction exhausted at min_size {}", min_size);
    }
  }
  return connect_and_absorb(g, working, factor, reservoir, qg, x, y, sides, rng());
}

}  // namespace detail

}  // namespace cyclecut
