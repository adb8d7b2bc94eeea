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

#include "local_graph.hpp"

#include "cyclecut/error.hpp"

namespace cyclecut::detail {

LocalGraph::LocalGraph(const Graph& g, std::span<const Vertex> working, const std::optional<Sides>& sides)
    : verts_(sorted_unique(VertexList(working.begin(), working.end()))),
      index_(static_cast<std::size_t>(g.num_vertices()), -1) {
  const int m = size();
  for (int i = 0; i < m; ++i) {
    if (!g.contains(verts_[static_cast<std::size_t>(i)])) {
      throw Error(ErrorCode::InvalidArgument, "working vertex out of range");
    }
    index_[static_cast<std::size_t>(verts_[static_cast<std::size_t>(i)])] = i;
  }
  side_.assign(static_cast<std::size_t>(m), -1);
  if (sides) {
    for (Vertex v : sides->x) {
      if (contains(v)) side_[static_cast<std::size_t>(local(v))] = 0;
    }
    for (Vertex v : sides->y) {
      if (contains(v)) side_[static_cast<std::size_t>(local(v))] = 1;
    }
  }
  words_ = (static_cast<std::size_t>(m) + 63) / 64;
  bits_.assign(words_ * static_cast<std::size_t>(m), 0);
  adj_.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    for (Vertex u : g.neighbors(global(i))) {
      const int j = local(u);
      if (j < 0) continue;
      if (sides && side(i) == side(j)) continue;
      adj_[static_cast<std::size_t>(i)].push_back(j);
      bits_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j) / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
}

Path LocalGraph::to_global(const std::vector<int>& p) const {
  Path out;
  out.reserve(p.size());
  for (int i : p) out.push_back(global(i));
  return out;
}

}  // namespace cyclecut::detail
