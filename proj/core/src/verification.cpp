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

#include "cyclecut/verification.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>

#include "cyclecut/error.hpp"

namespace cyclecut {

const Check* VerificationReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool VerificationReport::passed(std::string_view name) const {
  const Check* c = find(name);
  return c != nullptr && c->pass;
}

namespace {

void add(VerificationReport& report, std::string name, bool pass, std::string detail = {}) {
  report.pass = report.pass && pass;
  report.checks.push_back({std::move(name), pass, std::move(detail)});
}

std::string edge_text(Vertex a, Vertex b) { return std::to_string(a) + "-" + std::to_string(b); }

// Range, disjointness, coverage, length and adjacency checks shared by
// the cycle and path verifiers.
void check_parts(VerificationReport& report, const Graph& g, const std::vector<Path>& parts, bool wrap,
                 std::size_t min_len) {
  const int n = g.num_vertices();
  const char* noun = wrap ? "cycle " : "path ";
  std::string range_detail;
  std::string dup_detail;
  std::string len_detail;
  std::string adj_detail;
  std::vector<int> seen(static_cast<std::size_t>(std::max(n, 0)), -1);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Path& p = parts[i];
    if (p.size() < min_len && len_detail.empty()) {
      len_detail = noun + std::to_string(i) + " has " + std::to_string(p.size()) + " vertices";
    }
    for (Vertex v : p) {
      if (v < 0 || v >= n) {
        if (range_detail.empty()) range_detail = noun + std::to_string(i) + " has vertex " + std::to_string(v);
        continue;
      }
      auto& slot = seen[static_cast<std::size_t>(v)];
      if (slot >= 0) {
        if (dup_detail.empty()) {
          dup_detail = "vertex " + std::to_string(v) + " in " + noun + std::to_string(slot) + " and " +
                       std::to_string(i);
        }
      } else {
        slot = static_cast<int>(i);
        ++covered;
      }
    }
    const std::size_t k = p.size();
    const std::size_t pairs = wrap ? (k >= 2 ? k : 0) : (k >= 1 ? k - 1 : 0);
    for (std::size_t j = 0; j < pairs && adj_detail.empty(); ++j) {
      const Vertex a = p[j];
      const Vertex b = p[(j + 1) % k];
      const bool ok = a >= 0 && a < n && b >= 0 && b < n && g.has_edge(a, b);
      if (!ok) adj_detail = noun + std::to_string(i) + ": " + edge_text(a, b) + " is not an edge";
    }
  }
  add(report, "vertices-in-range", range_detail.empty(), range_detail);
  add(report, "disjoint", dup_detail.empty(), dup_detail);
  std::string cover_detail;
  if (covered != static_cast<std::size_t>(std::max(n, 0))) {
    for (int v = 0; v < n; ++v) {
      if (seen[static_cast<std::size_t>(v)] < 0) {
        cover_detail = std::to_string(static_cast<std::size_t>(n) - covered) + " vertices uncovered, first " +
                       std::to_string(v);
        break;
      }
    }
  }
  add(report, "coverage", cover_detail.empty(), cover_detail);
  add(report, "min-length", len_detail.empty(), len_detail);
  add(report, "adjacency", adj_detail.empty(), adj_detail);
  report.counts["parts"] = parts.size();
  report.counts["covered"] = covered;
  report.counts["n"] = n;
}

// Degree when every vertex has the same one.
std::optional<int> common_degree(const Graph& g) {
  if (g.num_vertices() == 0) return std::nullopt;
  const int d = g.degree(0);
  for (Vertex v = 1; v < g.num_vertices(); ++v) {
    if (g.degree(v) != d) return std::nullopt;
  }
  if (d == 0) return std::nullopt;
  return d;
}

void check_count(VerificationReport& report, std::size_t count, std::optional<int> bound, const char* why) {
  if (!bound) {
    add(report, "count-bound", false, why);
    return;
  }
  report.counts["bound"] = *bound;
  const bool ok = count <= static_cast<std::size_t>(*bound);
  add(report, "count-bound", ok,
      ok ? std::string{} : std::to_string(count) + " parts exceed the bound " + std::to_string(*bound));
}

}  // namespace

VerificationReport verify_cycle_partition(const Graph& g, const std::vector<Path>& cycles) {
  VerificationReport report;
  check_parts(report, g, cycles, true, 3);
  const auto d = common_degree(g);
  check_count(report, cycles.size(), d ? std::optional<int>(g.num_vertices() / (*d + 1)) : std::nullopt,
              "graph is not regular");
  return report;
}

VerificationReport verify_path_partition(const Graph& g, const std::vector<Path>& paths, bool bipartite,
                                         bool allow_singletons) {
  VerificationReport report;
  check_parts(report, g, paths, false, allow_singletons ? 1 : 2);
  const auto d = common_degree(g);
  if (!d) {
    check_count(report, paths.size(), std::nullopt, "graph is not regular");
  } else if (bipartite) {
    if (!two_coloring(g)) {
      check_count(report, paths.size(), std::nullopt, "graph is not bipartite");
    } else {
      check_count(report, paths.size(), g.num_vertices() / (2 * *d), "");
    }
  } else {
    check_count(report, paths.size(), g.num_vertices() / (*d + 1), "");
  }
  return report;
}

VerificationReport verify_forest(const Graph& g, const Decomposition& dec, const LinearForest& f, const Rational& xi) {
  VerificationReport report;
  const int n = g.num_vertices();
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < dec.clusters.size(); ++i) {
    for (Vertex v : dec.clusters[i].vertices) {
      if (v >= 0 && v < n) owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
  }
  std::string forest_detail;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::size_t size = 0;
  bool nontrivial = true;
  std::vector<std::vector<Vertex>> leaves(dec.clusters.size());
  for (std::size_t i = 0; i < f.paths.size(); ++i) {
    const Path& p = f.paths[i];
    if (p.size() < 2) nontrivial = false;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const Vertex v = p[j];
      if (v < 0 || v >= n || owner[static_cast<std::size_t>(v)] < 0) {
        if (forest_detail.empty()) forest_detail = "path " + std::to_string(i) + " has stray vertex " + std::to_string(v);
        continue;
      }
      if (used[static_cast<std::size_t>(v)]) {
        if (forest_detail.empty()) forest_detail = "vertex " + std::to_string(v) + " repeats";
        continue;
      }
      used[static_cast<std::size_t>(v)] = 1;
      ++size;
      if (j + 1 < p.size() && (p[j + 1] < 0 || p[j + 1] >= n || !g.has_edge(v, p[j + 1])) && forest_detail.empty()) {
        forest_detail = "path " + std::to_string(i) + ": " + edge_text(v, p[j + 1]) + " is not an edge";
      }
    }
    if (!p.empty()) {
      for (Vertex end : {p.front(), p.back()}) {
        if (end >= 0 && end < n && owner[static_cast<std::size_t>(end)] >= 0) {
          auto& list = leaves[static_cast<std::size_t>(owner[static_cast<std::size_t>(end)])];
          if (std::find(list.begin(), list.end(), end) == list.end()) list.push_back(end);
        }
      }
    }
  }
  add(report, "linear-forest", forest_detail.empty(), forest_detail);
  const bool small = Rational(static_cast<std::int64_t>(size)) <= xi * Rational(n);
  add(report, "a-size", small, small ? "" : std::to_string(size) + " forest vertices exceed xi n");
  add(report, "b-nontrivial", nontrivial, nontrivial ? "" : "a forest component has no edge");

  std::string c_detail;
  std::string d_detail;
  std::string e_detail;
  for (std::size_t i = 0; i < dec.clusters.size(); ++i) {
    const Cluster& c = dec.clusters[i];
    const auto k = leaves[i].size();
    if (k != 0 && k != 2 && c_detail.empty()) {
      c_detail = "cluster " + std::to_string(i) + " has " + std::to_string(k) + " leaves";
    }
    if (!c.is_near()) continue;
    auto on_x = [&](Vertex v) { return std::find(c.x.begin(), c.x.end(), v) != c.x.end(); };
    if (k == 2 && on_x(leaves[i][0]) == on_x(leaves[i][1]) && d_detail.empty()) {
      d_detail = "cluster " + std::to_string(i) + " has both leaves on one side";
    }
    if (k != 0 && k != 2 && d_detail.empty()) d_detail = "cluster " + std::to_string(i) + " has an unpaired leaf";
    std::int64_t x_in = 0;
    std::int64_t y_in = 0;
    for (Vertex v : c.x) x_in += v >= 0 && v < n && used[static_cast<std::size_t>(v)];
    for (Vertex v : c.y) y_in += v >= 0 && v < n && used[static_cast<std::size_t>(v)];
    const auto want = static_cast<std::int64_t>(c.x.size()) - static_cast<std::int64_t>(c.y.size());
    if (x_in - y_in != want && e_detail.empty()) {
      e_detail = "cluster " + std::to_string(i) + " residual " + std::to_string(want - (x_in - y_in));
    }
  }
  add(report, "c-leaf-count", c_detail.empty(), c_detail);
  add(report, "d-leaf-sides", d_detail.empty(), d_detail);
  add(report, "e-balance", e_detail.empty(), e_detail);
  report.counts["size"] = size;
  report.counts["paths"] = f.paths.size();
  return report;
}

std::optional<int> brute_min_cycle_partition(const Graph& g) {
  const int n = g.num_vertices();
  if (n > 14) throw Error(ErrorCode::TooLarge, "cycle partition oracle is limited to 14 vertices", {{"n", n}});
  if (n == 0) return 0;
  std::vector<std::uint32_t> nb(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : g.edges()) {
    nb[static_cast<std::size_t>(u)] |= 1U << v;
    nb[static_cast<std::size_t>(v)] |= 1U << u;
  }
  const std::uint32_t full = (1U << n) - 1;
  // ends[S]: vertices v such that some path from min(S) to v spans S
  std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
  std::vector<char> cyc(std::size_t{1} << n, 0);
  for (int s = 0; s < n; ++s) ends[1U << s] = 1U << s;
  for (std::uint32_t set = 1; set <= full; ++set) {
    const std::uint32_t e = ends[set];
    if (!e) continue;
    const int low = std::countr_zero(set);
    if (std::popcount(set) >= 3 && (e & nb[static_cast<std::size_t>(low)])) cyc[set] = 1;
    for (int v = 0; v < n; ++v) {
      if (!((e >> v) & 1U)) continue;
      // grow only by vertices above min(S) so min(S) stays the start
      std::uint32_t grow = nb[static_cast<std::size_t>(v)] & ~set & ~((2U << low) - 1);
      while (grow) {
        const int u = std::countr_zero(grow);
        grow &= grow - 1;
        ends[set | (1U << u)] |= 1U << u;
      }
    }
  }
  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  std::vector<int> best(std::size_t{1} << n, kInf);
  best[0] = 0;
  for (std::uint32_t set = 1; set <= full; ++set) {
    const std::uint32_t low = set & (~set + 1);
    const std::uint32_t rest = set ^ low;
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t part = sub | low;
      if (cyc[part] && best[set ^ part] + 1 < best[set]) best[set] = best[set ^ part] + 1;
      if (sub == 0) break;
    }
  }
  if (best[full] >= kInf) return std::nullopt;
  return best[full];
}

bool brute_ham_path(const Graph& g, std::span<const Vertex> working, Vertex x, Vertex y) {
  const VertexList w = sorted_unique(VertexList(working.begin(), working.end()));
  const auto k = static_cast<int>(w.size());
  if (k > 20) throw Error(ErrorCode::TooLarge, "Hamilton path oracle is limited to 20 vertices", {{"m", k}});
  const auto xi = std::find(w.begin(), w.end(), x);
  const auto yi = std::find(w.begin(), w.end(), y);
  if (xi == w.end() || yi == w.end()) return false;
  if (k == 1) return x == y;
  if (x == y) return false;
  const auto a = static_cast<int>(xi - w.begin());
  const auto b = static_cast<int>(yi - w.begin());
  // reach[S * k + v]: a path from a through exactly S ends at v
  std::vector<char> reach((std::size_t{1} << k) * static_cast<std::size_t>(k), 0);
  reach[(std::size_t{1} << a) * static_cast<std::size_t>(k) + static_cast<std::size_t>(a)] = 1;
  for (std::size_t set = 1; set < (std::size_t{1} << k); ++set) {
    for (int v = 0; v < k; ++v) {
      if (!reach[set * static_cast<std::size_t>(k) + static_cast<std::size_t>(v)]) continue;
      for (int u = 0; u < k; ++u) {
        if ((set >> u) & 1U) continue;
        if (!g.has_edge(w[static_cast<std::size_t>(v)], w[static_cast<std::size_t>(u)])) continue;
        reach[(set | (std::size_t{1} << u)) * static_cast<std::size_t>(k) + static_cast<std::size_t>(u)] = 1;
      }
    }
  }
  const std::size_t all = (std::size_t{1} << k) - 1;
  return reach[all * static_cast<std::size_t>(k) + static_cast<std::size_t>(b)] != 0;
}

}  // namespace cyclecut
