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

#include "cyclecut/matching.hpp"

#include <limits>
#include <queue>

namespace cyclecut {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HopcroftKarp {
  const std::vector<std::vector<int>>& adj;
  BipartiteMatching& m;
  std::vector<int> dist;

  bool bfs() {
    std::queue<int> queue;
    dist.assign(adj.size(), kInf);
    for (std::size_t u = 0; u < adj.size(); ++u) {
      if (m.left_mate[u] == -1) {
        dist[u] = 0;
        queue.push(static_cast<int>(u));
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (int v : adj[static_cast<std::size_t>(u)]) {
        const int w = m.right_mate[static_cast<std::size_t>(v)];
        if (w == -1) {
          found = true;
        } else if (dist[static_cast<std::size_t>(w)] == kInf) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : adj[static_cast<std::size_t>(u)]) {
      const int w = m.right_mate[static_cast<std::size_t>(v)];
      if (w == -1 || (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(u)] + 1 && dfs(w))) {
        m.left_mate[static_cast<std::size_t>(u)] = v;
        m.right_mate[static_cast<std::size_t>(v)] = u;
        return true;
      }
    }
    dist[static_cast<std::size_t>(u)] = kInf;
    return false;
  }
};

}  // namespace

BipartiteMatching hopcroft_karp(const std::vector<std::vector<int>>& left_adj, int num_right) {
  BipartiteMatching m;
  m.left_mate.assign(left_adj.size(), -1);
  m.right_mate.assign(static_cast<std::size_t>(num_right), -1);
  HopcroftKarp hk{left_adj, m, {}};
  while (hk.bfs()) {
    for (std::size_t u = 0; u < left_adj.size(); ++u) {
      if (m.left_mate[u] == -1 && hk.dfs(static_cast<int>(u))) ++m.size;
    }
  }
  return m;
}

std::vector<int> hall_violator(const std::vector<std::vector<int>>& left_adj, const BipartiteMatching& m) {
  std::vector<char> seen(left_adj.size(), 0);
  std::queue<int> queue;
  for (std::size_t u = 0; u < left_adj.size(); ++u) {
    if (m.left_mate[u] == -1) {
      seen[u] = 1;
      queue.push(static_cast<int>(u));
    }
  }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int v : left_adj[static_cast<std::size_t>(u)]) {
      const int w = m.right_mate[static_cast<std::size_t>(v)];
      if (w != -1 && !seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        queue.push(w);
      }
    }
  }
  std::vector<int> out;
  for (std::size_t u = 0; u < left_adj.size(); ++u) {
    if (seen[u]) out.push_back(static_cast<int>(u));
  }
  return out;
}

}  // namespace cyclecut
