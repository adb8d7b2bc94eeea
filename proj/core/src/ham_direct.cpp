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
#include <bit>
#include <cstdint>

#include "cyclecut/error.hpp"
#include "local_graph.hpp"

namespace cyclecut::detail {

namespace {

std::vector<int> walk_back(const LocalGraph& lg, const std::vector<std::uint32_t>& dp, std::uint32_t mask, int end,
                           int x) {
  std::vector<int> path{end};
  int cur = end;
  while (mask != (std::uint32_t{1} << x)) {
    const std::uint32_t prev_mask = mask ^ (std::uint32_t{1} << cur);
    std::uint32_t ends = dp[prev_mask];
    int next = -1;
    while (ends) {
      const int u = std::countr_zero(ends);
      ends &= ends - 1;
      if (lg.has(u, cur)) {
        next = u;
        break;
      }
    }
    if (next < 0) throw Error(ErrorCode::HamFailed, "subset table is inconsistent");
    path.push_back(next);
    mask = prev_mask;
    cur = next;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::optional<std::vector<int>> exact_local(const LocalGraph& lg, int x, int y, std::vector<int>* best) {
  const int m = lg.size();
  if (m > 24) throw Error(ErrorCode::TooLarge, "exact search is limited to 24 vertices", {{"m", m}});
  if (m == 1) {
    if (best) *best = {x};
    if (x == y) return std::vector<int>{x};
    return std::nullopt;
  }
  if (x == y) return std::nullopt;
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    for (int j : lg.adj(i)) adj[static_cast<std::size_t>(i)] |= std::uint32_t{1} << j;
  }
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  const std::uint32_t xbit = std::uint32_t{1} << x;
  const std::uint32_t ybit = std::uint32_t{1} << y;
  std::vector<std::uint32_t> dp(std::size_t{1} << m, 0);
  dp[xbit] = xbit;
  std::uint32_t best_mask = xbit;
  for (std::uint32_t mask = xbit; mask <= full; ++mask) {
    const std::uint32_t ends = dp[mask];
    if (!ends || !(mask & xbit)) continue;
    if (std::popcount(mask) > std::popcount(best_mask)) best_mask = mask;
    std::uint32_t ext = 0;
    for (std::uint32_t e = ends; e; e &= e - 1) ext |= adj[static_cast<std::size_t>(std::countr_zero(e))];
    ext &= ~mask;
    if ((mask | ybit) != full) ext &= ~ybit;
    for (; ext; ext &= ext - 1) {
      const int u = std::countr_zero(ext);
      dp[mask | (std::uint32_t{1} << u)] |= std::uint32_t{1} << u;
    }
    if (mask == full) break;
  }
  if (dp[full] & ybit) return walk_back(lg, dp, full, y, x);
  if (best) *best = walk_back(lg, dp, best_mask, std::countr_zero(dp[best_mask]), x);
  return std::nullopt;
}

std::optional<std::vector<int>> posa_local(const LocalGraph& lg, int x, int y, std::vector<int> path,
                                           std::mt19937_64& rng, long& budget, std::vector<int>* best) {
  const int m = lg.size();
  if (m == 1) return x == y ? std::optional<std::vector<int>>(std::vector<int>{x}) : std::nullopt;
  if (x == y) return std::nullopt;
  if (path.empty() || path.front() != x) path = {x};
  std::vector<int> pos(static_cast<std::size_t>(m), -1);
  for (std::size_t i = 0; i < path.size(); ++i) pos[static_cast<std::size_t>(path[i])] = static_cast<int>(i);

  auto usable = [&](int u) { return pos[static_cast<std::size_t>(u)] < 0 && (u != y || static_cast<int>(path.size()) == m - 1); };
  auto free_degree = [&](int v) {
    int k = 0;
    for (int u : lg.adj(v)) k += pos[static_cast<std::size_t>(u)] < 0;
    return k;
  };
  auto record = [&]() {
    if (best && path.size() > best->size()) *best = path;
  };

  std::size_t longest = path.size();
  long stall = 0;
  const long stall_limit = 8L * m + 64;
  std::vector<int> options;
  while (budget-- > 0) {
    if (static_cast<int>(path.size()) == m && path.back() == y) return path;
    const int e = path.back();

    options.clear();
    int best_deg = m + 1;
    for (int u : lg.adj(e)) {
      if (!usable(u)) continue;
      const int k = free_degree(u);
      if (k < best_deg) {
        best_deg = k;
        options.clear();
      }
      if (k == best_deg) options.push_back(u);
    }
    if (!options.empty()) {
      const int u = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      pos[static_cast<std::size_t>(u)] = static_cast<int>(path.size());
      path.push_back(u);
      if (path.size() > longest) {
        longest = path.size();
        stall = 0;
        record();
      }
      continue;
    }

    // rotate at the free end: e ~ p[i] turns p[i+1..] around
    std::vector<int> pivots;
    std::vector<int> good;
    const int len = static_cast<int>(path.size());
    for (int u : lg.adj(e)) {
      const int i = pos[static_cast<std::size_t>(u)];
      if (i < 0 || i > len - 3) continue;
      pivots.push_back(i);
      const int new_end = path[static_cast<std::size_t>(i) + 1];
      for (int w : lg.adj(new_end)) {
        if (usable(w)) {
          good.push_back(i);
          break;
        }
      }
    }
    if (++stall > stall_limit || pivots.empty()) {
      const std::size_t keep = std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, path.size() / 2))(rng);
      for (std::size_t i = keep; i < path.size(); ++i) pos[static_cast<std::size_t>(path[i])] = -1;
      path.resize(keep);
      longest = path.size();
      stall = 0;
      continue;
    }
    const auto& pick_from = good.empty() ? pivots : good;
    const int i = pick_from[std::uniform_int_distribution<std::size_t>(0, pick_from.size() - 1)(rng)];
    std::reverse(path.begin() + i + 1, path.end());
    for (int k = i + 1; k < len; ++k) pos[static_cast<std::size_t>(path[static_cast<std::size_t>(k)])] = k;
  }
  return std::nullopt;
}

namespace {

struct Backtracker {
  const LocalGraph& lg;
  int y;
  long& budget;
  std::vector<int>* best;
  std::vector<int> path;
  std::vector<char> used;

  // every unvisited vertex other than y needs two neighbours among the
  // unvisited vertices and the current end
  bool feasible() const {
    const int end = path.back();
    for (int w = 0; w < lg.size(); ++w) {
      if (used[static_cast<std::size_t>(w)]) continue;
      int k = 0;
      for (int u : lg.adj(w)) {
        if (!used[static_cast<std::size_t>(u)] || u == end) ++k;
        if (k >= 2) break;
      }
      if (k < (w == y ? 1 : 2)) return false;
    }
    return true;
  }

  bool run() {
    if (budget-- <= 0) return false;
    if (best && path.size() > best->size()) *best = path;
    const int m = lg.size();
    if (static_cast<int>(path.size()) == m) return path.back() == y;
    if (!feasible()) return false;
    const int e = path.back();
    std::vector<std::pair<int, int>> order;
    for (int u : lg.adj(e)) {
      if (used[static_cast<std::size_t>(u)]) continue;
      if (u == y && static_cast<int>(path.size()) != m - 1) continue;
      int k = 0;
      for (int w : lg.adj(u)) k += !used[static_cast<std::size_t>(w)];
      order.emplace_back(k, u);
    }
    std::sort(order.begin(), order.end());
    for (auto [k, u] : order) {
      used[static_cast<std::size_t>(u)] = 1;
      path.push_back(u);
      if (run()) return true;
      path.pop_back();
      used[static_cast<std::size_t>(u)] = 0;
      if (budget <= 0) return false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> backtrack_local(const LocalGraph& lg, int x, int y, long& budget,
                                                std::vector<int>* best) {
  if (x == y) return lg.size() == 1 ? std::optional<std::vector<int>>(std::vector<int>{x}) : std::nullopt;
  Backtracker bt{lg, y, budget, best, {x}, std::vector<char>(static_cast<std::size_t>(lg.size()), 0)};
  bt.used[static_cast<std::size_t>(x)] = 1;
  if (bt.run()) return bt.path;
  return std::nullopt;
}

}  // namespace cyclecut::detail
