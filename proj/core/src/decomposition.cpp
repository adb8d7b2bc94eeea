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

#include "cyclecut/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "cyclecut/error.hpp"
#include "log.hpp"

namespace cyclecut {

ParameterLadder ParameterLadder::defaults(const RegularityInfo& info) {
  ParameterLadder ladder;
  ladder.delta = info.c / 4;
  ladder.r_max = static_cast<int>(ceil(Rational(info.n, info.d))) + 1;
  return ladder;
}

void ParameterLadder::validate() const {
  const Rational zero(0);
  const Rational one(1);
  if (!(zero < eta && eta < beta && beta < gamma && gamma < zeta && zeta < one)) {
    throw Error(ErrorCode::InvalidArgument, "ladder must satisfy 0 < eta < beta < gamma < zeta < 1",
                {{"eta", format_rational(eta)}, {"beta", format_rational(beta)}, {"gamma", format_rational(gamma)},
                 {"zeta", format_rational(zeta)}});
  }
  if (!(zero < delta && delta < one)) {
    throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1)", {{"delta", format_rational(delta)}});
  }
  if (r_max < 1) throw Error(ErrorCode::InvalidArgument, "r_max must be positive");
}

int Decomposition::num_near() const {
  return static_cast<int>(std::count_if(clusters.begin(), clusters.end(), [](const Cluster& c) { return c.is_near(); }));
}

std::vector<int> Decomposition::cluster_of() const {
  std::vector<int> out(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    for (Vertex v : clusters[i].vertices) out[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  return out;
}

namespace {

struct LocalCut {
  std::vector<char> in_y;
  std::int64_t cross = 0;
  std::int64_t size_y = 0;
};

// a/b < c/d for nonnegative integers with b, d > 0
bool less_ratio(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) { return a * d < c * b; }

Cut to_cut(std::span<const Vertex> a, const LocalCut& lc) {
  Cut cut;
  for (std::size_t i = 0; i < a.size(); ++i) (lc.in_y[i] ? cut.y : cut.x).push_back(a[i]);
  if (!cut.x.empty() && !cut.y.empty() && cut.y.front() < cut.x.front()) std::swap(cut.x, cut.y);
  const auto m = static_cast<std::int64_t>(a.size());
  cut.sparsity = Rational(lc.cross, lc.size_y * (m - lc.size_y));
  return cut;
}

std::vector<std::vector<int>> local_adjacency(const Graph& g, std::span<const Vertex> a) {
  std::vector<int> local(static_cast<std::size_t>(g.num_vertices()), -1);
  for (std::size_t i = 0; i < a.size(); ++i) local[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
  std::vector<std::vector<int>> adj(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (Vertex u : g.neighbors(a[i])) {
      if (local[static_cast<std::size_t>(u)] >= 0) adj[i].push_back(local[static_cast<std::size_t>(u)]);
    }
  }
  return adj;
}

LocalCut fiedler_sweep(const std::vector<std::vector<int>>& adj) {
  const auto m = static_cast<Eigen::Index>(adj.size());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    lap(i, i) = static_cast<double>(adj[static_cast<std::size_t>(i)].size());
    for (int j : adj[static_cast<std::size_t>(i)]) lap(i, j) = -1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  const Eigen::VectorXd f = solver.eigenvectors().col(1);
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return f(x) < f(y); });

  std::vector<char> in_prefix(static_cast<std::size_t>(m), 0);
  std::int64_t cross = 0;
  std::int64_t best_cross = -1;
  std::int64_t best_k = 1;
  for (std::int64_t k = 1; k < m; ++k) {
    const int v = order[static_cast<std::size_t>(k - 1)];
    std::int64_t inside = 0;
    for (int u : adj[static_cast<std::size_t>(v)]) inside += in_prefix[static_cast<std::size_t>(u)];
    cross += static_cast<std::int64_t>(adj[static_cast<std::size_t>(v)].size()) - 2 * inside;
    in_prefix[static_cast<std::size_t>(v)] = 1;
    if (best_cross < 0 || less_ratio(cross, k * (m - k), best_cross, best_k * (m - best_k))) {
      best_cross = cross;
      best_k = k;
    }
  }
  LocalCut lc;
  lc.in_y.assign(static_cast<std::size_t>(m), 0);
  for (std::int64_t k = 0; k < best_k; ++k) lc.in_y[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = 1;
  lc.cross = best_cross;
  lc.size_y = best_k;
  return lc;
}

// Best-improvement single-vertex moves on the sparsity ratio.
void improve(const std::vector<std::vector<int>>& adj, LocalCut& lc) {
  const auto m = static_cast<std::int64_t>(adj.size());
  for (std::int64_t round = 0; round < m * m; ++round) {
    int best_v = -1;
    std::int64_t best_cross = lc.cross;
    std::int64_t best_y = lc.size_y;
    for (std::size_t v = 0; v < adj.size(); ++v) {
      const bool in_y = lc.in_y[v] != 0;
      const std::int64_t new_y = lc.size_y + (in_y ? -1 : 1);
      if (new_y == 0 || new_y == m) continue;
      std::int64_t same = 0;
      for (int u : adj[v]) same += (lc.in_y[static_cast<std::size_t>(u)] != 0) == in_y;
      const std::int64_t other = static_cast<std::int64_t>(adj[v].size()) - same;
      const std::int64_t new_cross = lc.cross - other + same;
      if (less_ratio(new_cross, new_y * (m - new_y), best_cross, best_y * (m - best_y))) {
        best_v = static_cast<int>(v);
        best_cross = new_cross;
        best_y = new_y;
      }
    }
    if (best_v < 0) return;
    lc.in_y[static_cast<std::size_t>(best_v)] ^= 1;
    lc.cross = best_cross;
    lc.size_y = best_y;
  }
}

constexpr int kExhaustiveCutLimit = 20;

LocalCut exhaustive_cut(const std::vector<std::vector<int>>& adj) {
  const int m = static_cast<int>(adj.size());
  std::vector<std::uint32_t> bits(adj.size(), 0);
  for (std::size_t i = 0; i < adj.size(); ++i) {
    for (int j : adj[i]) bits[i] |= 1U << j;
  }
  std::uint32_t side = 0;
  std::int64_t cross = 0;
  std::int64_t size_y = 0;
  std::int64_t best_cross = -1;
  std::int64_t best_y = 0;
  std::uint32_t best_side = 0;
  const std::uint64_t steps = std::uint64_t{1} << (m - 1);
  for (std::uint64_t k = 1; k < steps; ++k) {
    const int bit = std::countr_zero(k) + 1;
    const std::uint32_t b = 1U << bit;
    const int to_y = std::popcount(bits[static_cast<std::size_t>(bit)] & side);
    const int deg = std::popcount(bits[static_cast<std::size_t>(bit)]);
    if (side & b) {
      // leaving Y: edges to Y become cross, edges to X stop crossing
      cross += to_y - (deg - to_y);
      --size_y;
    } else {
      cross += (deg - to_y) - to_y;
      ++size_y;
    }
    side ^= b;
    if (size_y == 0) continue;
    if (best_cross < 0 || less_ratio(cross, size_y * (m - size_y), best_cross, best_y * (m - best_y))) {
      best_cross = cross;
      best_y = size_y;
      best_side = side;
    }
  }
  LocalCut lc;
  lc.in_y.assign(adj.size(), 0);
  for (int i = 0; i < m; ++i) lc.in_y[static_cast<std::size_t>(i)] = (best_side >> i) & 1U;
  lc.cross = best_cross;
  lc.size_y = best_y;
  return lc;
}

}  // namespace

Cut best_sparse_cut(const Graph& g, std::span<const Vertex> a_in) {
  if (a_in.size() < 2) throw Error(ErrorCode::InvalidArgument, "sparse cut search needs at least two vertices");
  VertexList a(a_in.begin(), a_in.end());
  std::sort(a.begin(), a.end());

  const auto comps = components(g, a);
  if (comps.size() > 1) {
    Cut cut;
    cut.x = comps.front();
    cut.y = set_difference(a, cut.x);
    cut.sparsity = Rational(0);
    return cut;
  }

  const auto adj = local_adjacency(g, a);
  LocalCut best = fiedler_sweep(adj);
  improve(adj, best);
  const auto m = static_cast<std::int64_t>(a.size());
  if (a.size() <= static_cast<std::size_t>(kExhaustiveCutLimit)) {
    const LocalCut exact = exhaustive_cut(adj);
    if (less_ratio(exact.cross, exact.size_y * (m - exact.size_y), best.cross, best.size_y * (m - best.size_y))) {
      best = exact;
    }
  }
  return to_cut(a, best);
}

std::optional<Cut> find_sparse_cut(const Graph& g, std::span<const Vertex> a, const Rational& threshold) {
  Cut cut = best_sparse_cut(g, a);
  if (cut.sparsity <= threshold) return cut;
  return std::nullopt;
}

std::pair<VertexList, VertexList> refine_split(const Graph& g, std::span<const Vertex> a1_in,
                                               std::span<const Vertex> a2_in, const Rational& eta_i,
                                               const Rational& mindeg_target) {
  const int n = g.num_vertices();
  VertexList a1 = sorted_unique(VertexList(a1_in.begin(), a1_in.end()));
  VertexList a2 = sorted_unique(VertexList(a2_in.begin(), a2_in.end()));
  if (a1.empty() || a2.empty()) throw Error(ErrorCode::EmptySide, "refine_split needs two nonempty sides");
  if (!set_intersection(a1, a2).empty()) throw Error(ErrorCode::InvalidArgument, "refine_split sides overlap");

  // many cross neighbours: count^2 > eta_i n^2
  const Rational bound_sq = eta_i * Rational(static_cast<std::int64_t>(n) * n);
  auto heavy = [&](std::int64_t cross) { return Rational(cross * cross) > bound_sq; };
  const Rational need = mindeg_target * Rational(n);

  std::vector<int> side(static_cast<std::size_t>(n), -1);
  for (Vertex v : a1) side[static_cast<std::size_t>(v)] = 0;
  for (Vertex v : a2) side[static_cast<std::size_t>(v)] = 1;
  const auto mask1 = make_mask(n, a1);
  const auto mask2 = make_mask(n, a2);
  VertexList loose;
  for (Vertex v : a1) {
    if (heavy(count_neighbors_in(g, v, mask2))) loose.push_back(v);
  }
  for (Vertex v : a2) {
    if (heavy(count_neighbors_in(g, v, mask1))) loose.push_back(v);
  }
  for (Vertex v : loose) side[static_cast<std::size_t>(v)] = -1;

  auto count_side = [&](Vertex v, int s) {
    int c = 0;
    for (Vertex u : g.neighbors(v)) c += side[static_cast<std::size_t>(u)] == s;
    return c;
  };
  auto fail = [&](Vertex v, int own, int other) {
    throw Error(ErrorCode::RefinementFailed,
                "vertex " + std::to_string(v) + " lacks neighbours on both sides",
                {{"vertex", v}, {"side_a", own}, {"side_b", other}, {"target", format_rational(need)}});
  };

  // A1'' and A2'': loose vertices join the side of A_j' holding enough of
  // their neighbours (the larger count on ties).
  std::sort(loose.begin(), loose.end());
  std::vector<int> placement(loose.size(), -1);
  for (std::size_t i = 0; i < loose.size(); ++i) {
    const int c0 = count_side(loose[i], 0);
    const int c1 = count_side(loose[i], 1);
    const bool ok0 = Rational(c0) >= need;
    const bool ok1 = Rational(c1) >= need;
    if (!ok0 && !ok1) {
      placement[i] = c0 >= c1 ? 0 : 1;
    } else {
      placement[i] = (ok0 && (!ok1 || c0 >= c1)) ? 0 : 1;
    }
  }
  for (std::size_t i = 0; i < loose.size(); ++i) side[static_cast<std::size_t>(loose[i])] = placement[i];

  VertexList all = a1;
  all.insert(all.end(), a2.begin(), a2.end());
  std::sort(all.begin(), all.end());
  for (std::size_t round = 0; round <= all.size() * 4; ++round) {
    bool moved = false;
    for (Vertex v : all) {
      const int s = side[static_cast<std::size_t>(v)];
      const int own = count_side(v, s);
      if (Rational(own) >= need) continue;
      const int other = count_side(v, 1 - s);
      if (Rational(other) < need) fail(v, own, other);
      side[static_cast<std::size_t>(v)] = 1 - s;
      moved = true;
    }
    if (!moved) {
      std::pair<VertexList, VertexList> out;
      for (Vertex v : all) (side[static_cast<std::size_t>(v)] == 0 ? out.first : out.second).push_back(v);
      if (out.first.empty() || out.second.empty()) {
        throw Error(ErrorCode::RefinementFailed, "refinement emptied one side");
      }
      return out;
    }
  }
  throw Error(ErrorCode::RefinementFailed, "refinement did not stabilise");
}

Cluster classify_cluster(const Graph& g, std::span<const Vertex> a, const Rational& beta, const Rational& gamma) {
  if (a.empty()) throw Error(ErrorCode::InvalidArgument, "cannot classify an empty set");
  Cluster cluster;
  cluster.vertices = sorted_unique(VertexList(a.begin(), a.end()));
  if (cluster.vertices.size() < 2) {
    cluster.kind = ClusterKind::FarBipartite;
    cluster.x = cluster.vertices;
    return cluster;
  }
  const Bipartition cut = max_cut_bipartition(g, cluster.vertices);
  cluster.x = cut.x;
  cluster.y = cut.y;
  cluster.uncut = cut.uncut;
  const auto size = static_cast<std::int64_t>(cluster.vertices.size());
  const Rational q(cut.uncut, size * size);
  if (q <= beta) {
    cluster.kind = ClusterKind::NearBipartite;
  } else if (q >= gamma) {
    cluster.kind = ClusterKind::FarBipartite;
  } else {
    throw Error(ErrorCode::ClassificationAmbiguous, "uncut edge density lies strictly between beta and gamma",
                {{"uncut", cut.uncut}, {"size", size}, {"beta", format_rational(beta)},
                 {"gamma", format_rational(gamma)}});
  }
  return cluster;
}

namespace {

// beta_0 = beta < beta_1 < ... < beta_gaps = gamma, geometric, rounded
// to a 1e-6 grid.
std::vector<Rational> beta_ladder(const Rational& beta, const Rational& gamma, int gaps) {
  std::vector<Rational> out{beta};
  const double b = to_double(beta);
  const double ratio = to_double(gamma) / b;
  for (int k = 1; k < gaps; ++k) {
    const double value = b * std::pow(ratio, static_cast<double>(k) / gaps);
    Rational r(static_cast<std::int64_t>(std::llround(value * 1e6)), 1000000);
    if (r <= out.back()) r = out.back() + Rational(1, 1000000);
    out.push_back(r);
  }
  out.push_back(gamma);
  return out;
}

}  // namespace

Decomposition decompose(const Graph& g, const RegularityInfo& info, const ParameterLadder& ladder,
                        const DecomposeOptions& options) {
  ladder.validate();
  const int n = g.num_vertices();
  if (options.fixed_sides && options.fixed_sides->size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::InvalidArgument, "fixed sides must cover every vertex");
  }

  std::vector<VertexList> parts(1);
  parts[0].resize(static_cast<std::size_t>(n));
  std::iota(parts[0].begin(), parts[0].end(), 0);
  std::vector<std::optional<Cut>> cached(1);
  auto best_of = [&](std::size_t i) -> const std::optional<Cut>& {
    if (!cached[i] && parts[i].size() >= 2) cached[i] = best_sparse_cut(g, parts[i]);
    return cached[i];
  };

  int level = 0;
  while (true) {
    Rational threshold = ladder.eta;
    for (int k = 0; k < level && threshold < ladder.zeta; ++k) threshold *= 3;
    threshold = std::min(threshold, ladder.zeta);

    std::optional<std::size_t> chosen;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto& cut = best_of(i);
      if (cut && cut->sparsity <= threshold) {
        chosen = i;
        break;
      }
    }
    if (!chosen) {
      if (threshold == ladder.zeta) break;
      ++level;
      continue;
    }
    if (static_cast<int>(parts.size()) >= ladder.r_max) {
      throw Error(ErrorCode::DecompositionFailed, "part cap reached while sparse cuts remain",
                  {{"reason", "r_max reached"}, {"r_max", ladder.r_max}, {"parts", parts.size()},
                   {"sparsity", format_rational(cached[*chosen]->sparsity)}});
    }
    const Cut cut = *cached[*chosen];
    std::pair<VertexList, VertexList> split;
    try {
      split = refine_split(g, cut.x, cut.y, threshold, ladder.delta);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RefinementFailed) throw;
      throw Error(ErrorCode::DecompositionFailed, std::string("refinement failed: ") + e.what(),
                  {{"reason", "refinement"}, {"cause", e.detail()}});
    }
    logger()->debug("split part of size {} at sparsity {} into {} + {}", parts[*chosen].size(),
                    format_rational(cut.sparsity), split.first.size(), split.second.size());
    parts[*chosen] = std::move(split.first);
    cached[*chosen].reset();
    parts.push_back(std::move(split.second));
    cached.emplace_back();
    ++level;
  }

  std::sort(parts.begin(), parts.end(), [](const VertexList& a, const VertexList& b) { return a.front() < b.front(); });

  Decomposition dec;
  dec.n = n;
  dec.ladder = ladder;
  const int r = static_cast<int>(parts.size());

  if (options.fixed_sides) {
    const auto& sides = *options.fixed_sides;
    for (const auto& part : parts) {
      Cluster c;
      c.vertices = part;
      c.kind = ClusterKind::NearBipartite;
      for (Vertex v : part) (sides[static_cast<std::size_t>(v)] == 0 ? c.x : c.y).push_back(v);
      c.uncut = count_edges_within(g, c.x) + count_edges_within(g, c.y);
      dec.clusters.push_back(std::move(c));
    }
    dec.beta = ladder.beta;
    dec.gamma = ladder.gamma;
    return dec;
  }

  std::vector<Bipartition> cuts;
  std::vector<Rational> density;
  for (const auto& part : parts) {
    if (part.size() < 2) {
      cuts.push_back(Bipartition{part, {}, 0, true});
      density.push_back(Rational(1));
      continue;
    }
    cuts.push_back(max_cut_bipartition(g, part));
    const auto s = static_cast<std::int64_t>(part.size());
    density.push_back(Rational(cuts.back().uncut, s * s));
  }
  const int gaps = options.ladder_gaps > 0 ? options.ladder_gaps : r + 1;
  const auto rungs = beta_ladder(ladder.beta, ladder.gamma, gaps);
  std::optional<int> gap;
  for (int i = 0; i < gaps && !gap; ++i) {
    const bool empty = std::none_of(density.begin(), density.end(), [&](const Rational& q) {
      return rungs[static_cast<std::size_t>(i)] < q && q < rungs[static_cast<std::size_t>(i) + 1];
    });
    if (empty) gap = i;
  }
  if (!gap) {
    throw Error(ErrorCode::ClassificationAmbiguous, "every gap of the beta ladder holds a cluster",
                {{"gaps", gaps}, {"clusters", r}});
  }
  dec.beta = rungs[static_cast<std::size_t>(*gap)];
  dec.gamma = rungs[static_cast<std::size_t>(*gap) + 1];
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Cluster c;
    c.vertices = parts[i];
    c.x = cuts[i].x;
    c.y = cuts[i].y;
    c.uncut = cuts[i].uncut;
    c.kind = density[i] <= dec.beta ? ClusterKind::NearBipartite : ClusterKind::FarBipartite;
    dec.clusters.push_back(std::move(c));
  }
  (void)info;
  return dec;
}

DecompositionCheck check_decomposition(const Graph& g, const Decomposition& dec) {
  DecompositionCheck check;
  const int n = g.num_vertices();
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  bool in_range = true;
  for (const auto& c : dec.clusters) {
    for (Vertex v : c.vertices) {
      if (!g.contains(v)) {
        in_range = false;
        continue;
      }
      ++seen[static_cast<std::size_t>(v)];
    }
  }
  check.partition = in_range && std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
  check.count_within_cap = static_cast<int>(dec.clusters.size()) <= dec.ladder.r_max;
  if (!check.partition) return check;

  const auto owner = dec.cluster_of();
  std::int64_t cross = 0;
  for (auto [u, v] : g.edges()) cross += owner[static_cast<std::size_t>(u)] != owner[static_cast<std::size_t>(v)];
  check.cross_edges = cross;
  check.cross_edges_small = Rational(cross) <= dec.ladder.eta * Rational(static_cast<std::int64_t>(n) * n);

  int min_internal = n;
  for (Vertex v = 0; v < n; ++v) {
    int internal = 0;
    for (Vertex u : g.neighbors(v)) internal += owner[static_cast<std::size_t>(u)] == owner[static_cast<std::size_t>(v)];
    min_internal = std::min(min_internal, internal);
  }
  check.min_internal_degree = min_internal;
  check.min_degree = Rational(min_internal) >= dec.ladder.delta * Rational(n);

  check.no_sparse_cut = true;
  check.near_sides_valid = true;
  for (const auto& c : dec.clusters) {
    if (c.vertices.size() >= 2 && find_sparse_cut(g, c.vertices, dec.ladder.zeta)) check.no_sparse_cut = false;
    if (!c.is_near()) continue;
    VertexList both = c.x;
    both.insert(both.end(), c.y.begin(), c.y.end());
    both = sorted_unique(both);
    const bool sides_ok = !c.x.empty() && !c.y.empty() && both.size() == c.x.size() + c.y.size() &&
                          both == c.vertices;
    const bool uncut_ok = Rational(c.uncut) <= dec.beta * Rational(static_cast<std::int64_t>(n) * n);
    bool stable = true;
    if (sides_ok) {
      const auto mx = make_mask(n, c.x);
      const auto my = make_mask(n, c.y);
      for (Vertex v : c.x) stable = stable && count_neighbors_in(g, v, my) >= count_neighbors_in(g, v, mx);
      for (Vertex v : c.y) stable = stable && count_neighbors_in(g, v, mx) >= count_neighbors_in(g, v, my);
    }
    check.near_sides_valid = check.near_sides_valid && sides_ok && uncut_ok && stable;
  }
  return check;
}

}  // namespace cyclecut
