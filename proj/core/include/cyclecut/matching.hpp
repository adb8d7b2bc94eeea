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

#pragma once

#include <vector>

namespace cyclecut {

struct BipartiteMatching {
  std::vector<int> left_mate;   // -1 when unmatched
  std::vector<int> right_mate;
  int size = 0;
};

// Hopcroft-Karp on a bipartite graph given by left adjacency lists.
BipartiteMatching hopcroft_karp(const std::vector<std::vector<int>>& left_adj, int num_right);

// Left vertices reachable from unmatched left vertices by alternating
// paths. For a non-perfect maximum matching this set violates Hall's
// condition: its neighbourhood is smaller than itself.
std::vector<int> hall_violator(const std::vector<std::vector<int>>& left_adj, const BipartiteMatching& m);

}  // namespace cyclecut
