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

#include "cyclecut/hamiltonicity.hpp"

#include <algorithm>
#include <random>

#include "cyclecut/error.hpp"
#include "local_graph.hpp"
#include "log.hpp"

namespace cyclecut {

std::string_view to_string(HamMode mode) {
  switch (mode) {
    case HamMode::Paper:
      return "paper";
    case HamMode::Direct:
      return "direct";
    case HamMode::Auto:
      return "auto";
  }
  return "auto";
}

HamMode parse_ham_mode(std::string_view text) {
  if (text == "paper") return HamMode::Paper;
  if (text == "direct") return HamMode::Direct;
  if (text == "auto") return HamMode::Auto;
  throw Error(ErrorCode::InvalidArgument, "unknown Hamilton mode '" + std::string(text) + "'");
}

namespace {

VertexList working_set(const HamRequest& req) {
  return set_difference(sorted_unique(req.cluster.vertices), sorted_unique(req.removed));
}

}  // namespace

void validate_request(const Graph& g, const HamRequest& req) {
  for (Vertex v : req.cluster.vertices) {
    if (!g.contains(v)) throw Error(ErrorCode::InvalidArgument, "cluster vertex out of range", {{"vertex", v}});
  }
  const VertexList w = working_set(req);
  auto inside = [&](Vertex v) { return std::binary_search(w.begin(), w.end(), v); };
  if (!inside(req.x) || !inside(req.y)) {
    throw Error(ErrorCode::InvalidArgument, "ends must lie in the cluster outside the removed set",
                {{"x", req.x}, {"y", req.y}});
  }
  if (req.x == req.y) throw Error(ErrorCode::InvalidArgument, "ends must be distinct", {{"x", req.x}});
  if (req.cluster.is_near()) {
    const VertexList xs = set_difference(sorted_unique(req.cluster.x), sorted_unique(req.removed));
    const VertexList ys = set_difference(sorted_unique(req.cluster.y), sorted_unique(req.removed));
    if (xs.size() != ys.size()) {
      throw Error(ErrorCode::InvalidArgument, "near-bipartite request leaves unbalanced sides",
                  {{"x_left", xs.size()}, {"y_left", ys.size()}});
    }
    const bool x_in_x = std::binary_search(xs.begin(), xs.end(), req.x);
    const bool y_in_x = std::binary_search(xs.begin(), xs.end(), req.y);
    if (x_in_x == y_in_x) {
      throw Error(ErrorCode::InvalidArgument, "near-bipartite ends must lie on opposite sides",
                  {{"x", req.x}, {"y", req.y}});
    }
  }
}

std::optional<Path> exact_ham_path(const Graph& g, std::span<const Vertex> working, Vertex x, Vertex y,
                                   const std::optional<Sides>& sides) {
  const detail::LocalGraph lg(g, working, sides);
  if (!lg.contains(x) || !lg.contains(y)) throw Error(ErrorCode::InvalidArgument, "ends outside the working set");
  auto p = detail::exact_local(lg, lg.local(x), lg.local(y));
  if (!p) return std::nullopt;
  return lg.to_global(*p);
}

namespace {

std::optional<Path> direct_search(const detail::LocalGraph& lg, Vertex x, Vertex y, std::uint64_t seed, long budget,
                                  Path* best) {
  const int lx = lg.local(x);
  const int ly = lg.local(y);
  std::mt19937_64 rng(seed);
  std::vector<int> best_local;
  long posa_budget = budget;
  auto p = detail::posa_local(lg, lx, ly, {lx}, rng, posa_budget, &best_local);
  if (!p) {
    long bt_budget = budget;
    p = detail::backtrack_local(lg, lx, ly, bt_budget, &best_local);
  }
  if (best) *best = lg.to_global(best_local);
  if (!p) return std::nullopt;
  return lg.to_global(*p);
}

}  // namespace

std::optional<Path> posa_ham_path(const Graph& g, std::span<const Vertex> working, Vertex x, Vertex y,
                                  const std::optional<Sides>& sides, std::uint64_t seed, long budget) {
  const detail::LocalGraph lg(g, working, sides);
  if (!lg.contains(x) || !lg.contains(y)) throw Error(ErrorCode::InvalidArgument, "ends outside the working set");
  return direct_search(lg, x, y, seed, budget, nullptr);
}

bool is_hamilton_path(const Graph& g, std::span<const Vertex> working, const Path& p, Vertex x, Vertex y) {
  const VertexList w = sorted_unique(VertexList(working.begin(), working.end()));
  if (p.size() != w.size() || p.empty() || p.front() != x || p.back() != y) return false;
  if (sorted_unique(p) != w) return false;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (!g.has_edge(p[i], p[i + 1])) return false;
  }
  return true;
}

HamResult solve_ham_path(const Graph& g, const HamRequest& req, std::uint64_t seed, const HamOptions& options) {
  validate_request(g, req);
  const VertexList w = working_set(req);
  const auto m = static_cast<int>(w.size());
  const detail::LocalGraph lg(g, w);
  const int exact_limit = std::min(options.exact_limit, 24);
  Path best;

  auto direct = [&]() -> std::optional<HamResult> {
    if (m <= exact_limit) {
      std::vector<int> best_local;
      auto p = detail::exact_local(lg, lg.local(req.x), lg.local(req.y), &best_local);
      if (!p) {
        if (best_local.size() > best.size()) best = lg.to_global(best_local);
        return std::nullopt;
      }
      return HamResult{lg.to_global(*p), HamRoute::Exact, false};
    }
    Path attempt_best;
    auto p = direct_search(lg, req.x, req.y, seed ^ 0x5deece66dULL, options.posa_budget, &attempt_best);
    if (attempt_best.size() > best.size()) best = attempt_best;
    if (p) return HamResult{*p, HamRoute::Posa, false};
    if (m <= 24) {
      auto e = detail::exact_local(lg, lg.local(req.x), lg.local(req.y));
      if (e) return HamResult{lg.to_global(*e), HamRoute::Exact, false};
    }
    return std::nullopt;
  };

  std::optional<HamResult> result;
  const bool use_reservoir =
      options.mode == HamMode::Paper || (options.mode == HamMode::Auto && m > exact_limit);
  bool fell_back = false;
  if (use_reservoir) {
    std::optional<Sides> sides;
    if (req.cluster.is_near()) {
      sides = Sides{set_difference(sorted_unique(req.cluster.x), sorted_unique(req.removed)),
                    set_difference(sorted_unique(req.cluster.y), sorted_unique(req.removed))};
    }
    try {
      Path p = detail::reservoir_ham_path(g, w, req.x, req.y, sides, seed);
      if (is_hamilton_path(g, w, p, req.x, req.y)) {
        result = HamResult{std::move(p), HamRoute::Paper, false};
      } else {
        logger()->warn("reservoir pipeline returned an invalid path; using direct search");
      }
    } catch (const Error& e) {
      logger()->debug("reservoir pipeline failed ({}): {}", to_string(e.code()), e.what());
    }
    if (!result) fell_back = true;
  }
  if (!result) result = direct();
  if (!result || !is_hamilton_path(g, w, result->path, req.x, req.y)) {
    throw Error(ErrorCode::HamFailed, "no Hamilton path found between the requested ends",
                {{"x", req.x}, {"y", req.y}, {"m", m}, {"best_path", best}});
  }
  result->fell_back_to_direct = fell_back;
  return *result;
}

Path ham_path(const Graph& g, const HamRequest& req, HamMode mode, std::uint64_t seed) {
  HamOptions options;
  options.mode = mode;
  return solve_ham_path(g, req, seed, options).path;
}

}  // namespace cyclecut
