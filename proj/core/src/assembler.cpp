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

#include "cyclecut/assembler.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <numeric>
#include <random>
#include <thread>

#include "cyclecut/error.hpp"
#include "log.hpp"

namespace cyclecut {

ParameterLadder LadderOverrides::apply(ParameterLadder ladder) const {
  if (eta) ladder.eta = *eta;
  if (beta) ladder.beta = *beta;
  if (gamma) ladder.gamma = *gamma;
  if (zeta) ladder.zeta = *zeta;
  if (delta) ladder.delta = *delta;
  return ladder;
}

std::optional<std::pair<Edge, Edge>> find_two_matching(const Graph& g, std::span<const Vertex> ai,
                                                       std::span<const Vertex> aj) {
  const VertexList a = sorted_unique(VertexList(ai.begin(), ai.end()));
  const VertexList b = sorted_unique(VertexList(aj.begin(), aj.end()));
  if (!set_intersection(a, b).empty()) throw Error(ErrorCode::InvalidArgument, "two-matching sets must be disjoint");
  std::vector<Edge> cross;
  for (Vertex u : a) {
    for (Vertex v : g.neighbors(u)) {
      if (std::binary_search(b.begin(), b.end(), v)) cross.emplace_back(u, v);
    }
  }
  std::sort(cross.begin(), cross.end());
  for (std::size_t i = 0; i < cross.size(); ++i) {
    for (std::size_t j = i + 1; j < cross.size(); ++j) {
      if (cross[i].first != cross[j].first && cross[i].second != cross[j].second) return std::pair{cross[i], cross[j]};
    }
  }
  return std::nullopt;
}

VerificationReport closing_cycle_check(const CyclePartition& partition, const Graph& g) {
  return verify_cycle_partition(g, partition.cycles);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Error stage_error(const std::string& stage, const std::string& message, nlohmann::json diagnostic = {}) {
  return Error(ErrorCode::AssemblyFailed, stage + ": " + message, {{"stage", stage}, {"diagnostic", diagnostic}});
}

std::string stage_of(const Error& e) {
  switch (e.code()) {
    case ErrorCode::BalancingFailed:
    case ErrorCode::NotAlmostBalancing:
      return "balance";
    case ErrorCode::MergeFailed:
    case ErrorCode::NoExtensionVertex:
    case ErrorCode::CycleDetected:
      return "forest";
    case ErrorCode::HamFailed:
      return "hamilton";
    case ErrorCode::AssemblyFailed:
      if (e.detail().contains("stage")) return e.detail()["stage"].get<std::string>();
      return "assembly";
    default:
      return "assembly";
  }
}

bool retryable(ErrorCode code) {
  switch (code) {
    case ErrorCode::BalancingFailed:
    case ErrorCode::NotAlmostBalancing:
    case ErrorCode::MergeFailed:
    case ErrorCode::NoExtensionVertex:
    case ErrorCode::CycleDetected:
    case ErrorCode::HamFailed:
    case ErrorCode::AssemblyFailed:
      return true;
    default:
      return false;
  }
}

enum class Shape { Cycles, Paths };

struct Built {
  std::vector<Path> parts;
  LinearForest forest;
  ForestReport report;
  int balance_retries = 0;
  int forest_retries = 0;
  bool two_matching = false;
  double forest_ms = 0;
  double hamilton_ms = 0;
};

std::vector<Path> solve_all(const Graph& g, const std::vector<HamRequest>& requests, std::uint64_t seed,
                            const AssemblyConfig& config) {
  std::vector<Path> out(requests.size());
  std::vector<std::exception_ptr> errors(requests.size());
  std::atomic<std::size_t> next{0};
  HamOptions options;
  options.mode = config.mode;
  auto worker = [&]() {
    for (std::size_t i = next++; i < requests.size(); i = next++) {
      try {
        out[i] = solve_ham_path(g, requests[i], mix(seed, i), options).path;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::clamp(config.threads, 1, 64));
  if (workers <= 1 || requests.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(workers, requests.size()); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidArgument) {
        throw stage_error("hamilton", e.what(), {{"cluster_request", i}, {"detail", e.detail()}});
      }
      throw;
    }
  }
  return out;
}

// Splits a graph of maximum degree two into paths (from degree-one ends)
// and cycles.
void split_components(const std::vector<std::vector<Vertex>>& adj, std::vector<Path>& paths,
                      std::vector<Path>& cycles) {
  const auto n = adj.size();
  std::vector<char> seen(n, 0);
  auto walk = [&](Vertex start) {
    Path p{start};
    seen[static_cast<std::size_t>(start)] = 1;
    Vertex prev = -1;
    Vertex cur = start;
    while (true) {
      const auto& nb = adj[static_cast<std::size_t>(cur)];
      Vertex next = -1;
      if (nb.size() == 1) {
        next = nb[0] == prev ? -1 : nb[0];
      } else if (nb.size() == 2) {
        next = (prev == -1) ? std::min(nb[0], nb[1]) : (nb[0] == prev ? nb[1] : nb[0]);
      }
      if (next < 0 || seen[static_cast<std::size_t>(next)]) break;
      seen[static_cast<std::size_t>(next)] = 1;
      p.push_back(next);
      prev = cur;
      cur = next;
    }
    return p;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (adj[v].size() > 2) throw stage_error("structure", "vertex of degree above two", {{"vertex", v}});
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v] && adj[v].size() <= 1) paths.push_back(walk(static_cast<Vertex>(v)));
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v]) cycles.push_back(walk(static_cast<Vertex>(v)));
  }
}

bool opposite(const Cluster& c, Vertex a, Vertex b) {
  if (!c.is_near()) return true;
  const bool ax = std::binary_search(c.x.begin(), c.x.end(), a);
  const bool bx = std::binary_search(c.x.begin(), c.x.end(), b);
  return ax != bx;
}

Built attempt_once(const Graph& g, const Decomposition& dec, const AssemblyConfig& config, std::uint64_t seed,
                   int l, Shape shape) {
  const int n = g.num_vertices();
  Built built;
  auto t0 = Clock::now();
  ForestOptions fo;
  fo.xi = config.xi;
  fo.balance.max_retries = config.max_retries;
  fo.balance.flow_deficit = config.flow_deficit;
  ForestResult fr = build_balancing_forest(g, dec, mix(seed, 1), fo);
  built.forest_ms = ms_since(t0);
  built.forest = fr.forest;
  built.report = fr.report;
  built.balance_retries = fr.balance.retries;
  built.forest_retries = fr.retries;

  const auto owner = dec.cluster_of();
  const VertexList interior = fr.forest.interior();
  const auto in_interior = make_mask(n, interior);
  const auto r = dec.clusters.size();
  std::vector<VertexList> leaves(r);
  for (Vertex v : fr.forest.leaves()) leaves[static_cast<std::size_t>(owner[static_cast<std::size_t>(v)])].push_back(v);
  std::vector<VertexList> working(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (Vertex v : dec.clusters[i].vertices) {
      if (!in_interior[static_cast<std::size_t>(v)]) working[i].push_back(v);
    }
  }

  // clusters joined by forest paths end up on one cycle
  std::vector<int> group(r);
  std::iota(group.begin(), group.end(), 0);
  auto find = [&](int x) {
    while (group[static_cast<std::size_t>(x)] != x) x = group[static_cast<std::size_t>(x)];
    return x;
  };
  for (const auto& p : fr.forest.paths) {
    const int a = find(owner[static_cast<std::size_t>(p.front())]);
    const int b = find(owner[static_cast<std::size_t>(p.back())]);
    if (a != b) group[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<char> counted(r, 0);
  int groups = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (leaves[i].empty() && working[i].empty()) continue;
    const auto root = static_cast<std::size_t>(find(static_cast<int>(i)));
    if (!counted[root]) {
      counted[root] = 1;
      ++groups;
    }
  }

  // cycles need at most l groups; pair two leafless clusters through a 2-matching otherwise
  std::optional<std::pair<std::size_t, std::size_t>> paired;
  std::pair<Edge, Edge> pair_edges;
  if (shape == Shape::Cycles && groups > l) {
    for (std::size_t i = 0; i < r && !paired; ++i) {
      if (!leaves[i].empty() || working[i].size() < 2) continue;
      for (std::size_t j = i + 1; j < r && !paired; ++j) {
        if (!leaves[j].empty() || working[j].size() < 2) continue;
        std::vector<Edge> cross;
        for (Vertex u : working[i]) {
          for (Vertex v : g.neighbors(u)) {
            if (std::binary_search(working[j].begin(), working[j].end(), v)) cross.emplace_back(u, v);
          }
        }
        for (std::size_t a = 0; a < cross.size() && !paired; ++a) {
          for (std::size_t b = a + 1; b < cross.size() && !paired; ++b) {
            const auto [ai, aj] = cross[a];
            const auto [bi, bj] = cross[b];
            if (ai == bi || aj == bj) continue;
            if (!opposite(dec.clusters[i], ai, bi) || !opposite(dec.clusters[j], aj, bj)) continue;
            paired = std::pair{i, j};
            pair_edges = {cross[a], cross[b]};
          }
        }
      }
    }
    if (!paired) {
      if (fr.forest.empty()) {
        throw Error(ErrorCode::TwoMatchingMissing, "no cluster pair admits two disjoint cross edges",
                    {{"r", r}, {"l", l}});
      }
      throw stage_error("two-matching", "forest leaves too many groups and no 2-matching joins two of them",
                        {{"groups", groups}, {"l", l}});
    }
    built.two_matching = true;
  }

  std::mt19937_64 rng(mix(seed, 2));
  std::vector<HamRequest> requests;
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n));
  auto add_edge = [&](Vertex a, Vertex b) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  };
  for (std::size_t i = 0; i < r; ++i) {
    const Cluster& c = dec.clusters[i];
    if (working[i].empty()) continue;
    HamRequest req{c, interior, -1, -1};
    if (leaves[i].size() == 2) {
      req.x = leaves[i][0];
      req.y = leaves[i][1];
    } else if (paired && (paired->first == i || paired->second == i)) {
      const bool first = paired->first == i;
      req.x = first ? pair_edges.first.first : pair_edges.first.second;
      req.y = first ? pair_edges.second.first : pair_edges.second.second;
    } else if (working[i].size() == 1 && shape == Shape::Paths) {
      adj[static_cast<std::size_t>(working[i][0])];  // singleton part
      continue;
    } else {
      std::vector<Edge> candidates;
      for (Vertex u : working[i]) {
        for (Vertex v : working[i]) {
          if (u == v || !opposite(c, u, v)) continue;
          if (c.is_near() && !std::binary_search(c.x.begin(), c.x.end(), u)) continue;
          if (!c.is_near() && u > v) continue;
          if (shape == Shape::Cycles && !g.has_edge(u, v)) continue;
          candidates.emplace_back(u, v);
        }
      }
      if (candidates.empty() || (shape == Shape::Cycles && working[i].size() < 3)) {
        throw stage_error("endpoints", "cluster has no usable end pair outside the forest interior",
                          {{"cluster", i}, {"working", working[i].size()}});
      }
      const auto pick = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
      req.x = pick.first;
      req.y = pick.second;
      if (shape == Shape::Cycles) add_edge(req.y, req.x);
    }
    requests.push_back(std::move(req));
  }
  if (paired) {
    add_edge(pair_edges.first.first, pair_edges.first.second);
    add_edge(pair_edges.second.first, pair_edges.second.second);
  }

  t0 = Clock::now();
  const std::vector<Path> solved = solve_all(g, requests, mix(seed, 3), config);
  built.hamilton_ms = ms_since(t0);
  for (const auto& p : solved) {
    for (std::size_t k = 0; k + 1 < p.size(); ++k) add_edge(p[k], p[k + 1]);
  }
  for (const auto& p : fr.forest.paths) {
    for (std::size_t k = 0; k + 1 < p.size(); ++k) add_edge(p[k], p[k + 1]);
  }

  std::vector<Path> paths;
  std::vector<Path> cycles;
  split_components(adj, paths, cycles);
  if (shape == Shape::Cycles) {
    if (!paths.empty()) throw stage_error("structure", "assembled pieces do not close into cycles", {{"open", paths.size()}});
    built.parts = std::move(cycles);
    return built;
  }

  // paths: open every cycle; a cycle may be opened anywhere, a path only at its ends
  struct Part {
    Path seq;
    bool rotatable;
  };
  std::vector<Part> parts;
  for (auto& p : paths) parts.push_back({std::move(p), false});
  for (auto& c : cycles) parts.push_back({std::move(c), true});
  while (static_cast<int>(parts.size()) > l) {
    std::vector<int> part_of(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (Vertex v : parts[i].seq) part_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    auto can_end = [&](const Part& p, Vertex v) { return p.rotatable || p.seq.front() == v || p.seq.back() == v; };
    bool merged = false;
    for (const auto& [u, v] : g.edges()) {
      const int pu = part_of[static_cast<std::size_t>(u)];
      const int pv = part_of[static_cast<std::size_t>(v)];
      if (pu == pv || pu < 0 || pv < 0) continue;
      Part& a = parts[static_cast<std::size_t>(pu)];
      Part& b = parts[static_cast<std::size_t>(pv)];
      if (!can_end(a, u) || !can_end(b, v)) continue;
      // a ends at u, b starts at v
      auto end_at = [](Path& s, Vertex x, bool rot) {
        if (rot) {
          const auto it = std::find(s.begin(), s.end(), x);
          std::rotate(s.begin(), it + 1, s.end());
        } else if (s.back() != x) {
          std::reverse(s.begin(), s.end());
        }
      };
      end_at(a.seq, u, a.rotatable);
      end_at(b.seq, v, b.rotatable);
      std::reverse(b.seq.begin(), b.seq.end());
      a.seq.insert(a.seq.end(), b.seq.begin(), b.seq.end());
      a.rotatable = false;
      parts.erase(parts.begin() + pv);
      merged = true;
      break;
    }
    if (!merged) throw stage_error("merge", "no edge joins two parts at their ends", {{"parts", parts.size()}, {"l", l}});
  }
  for (auto& p : parts) built.parts.push_back(std::move(p.seq));
  std::sort(built.parts.begin(), built.parts.end(),
            [](const Path& a, const Path& b) { return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end()); });
  return built;
}

// Splits off short cycles until there are `target` of them. Uses two chords
// c_i c_j and c_{i-1} c_{j+1} of one cycle.
int pad_cycles(const Graph& g, std::vector<Path>& cycles, int target) {
  int padded = 0;
  while (static_cast<int>(cycles.size()) < target) {
    bool split = false;
    for (std::size_t idx = 0; idx < cycles.size() && !split; ++idx) {
      const Path c = cycles[idx];
      const auto k = c.size();
      if (k < 6) continue;
      for (std::size_t span = 2; span + 1 + 3 <= k && !split; ++span) {
        for (std::size_t i = 0; i < k && !split; ++i) {
          const std::size_t j = (i + span) % k;
          const std::size_t before = (i + k - 1) % k;
          const std::size_t after = (j + 1) % k;
          if (!g.has_edge(c[i], c[j]) || !g.has_edge(c[before], c[after])) continue;
          Path small;
          Path rest;
          for (std::size_t t = 0; t <= span; ++t) small.push_back(c[(i + t) % k]);
          for (std::size_t t = 0; t < k - span - 1; ++t) rest.push_back(c[(after + t) % k]);
          cycles[idx] = std::move(rest);
          cycles.push_back(std::move(small));
          split = true;
        }
      }
    }
    if (!split) {
      logger()->warn("exact-count padding stopped at {} of {} cycles", cycles.size(), target);
      break;
    }
    ++padded;
  }
  return padded;
}

template <class Result>
Result run_pipeline(const Graph& g, const AssemblyConfig& config, std::uint64_t seed, Shape shape) {
  const auto start = Clock::now();
  const RegularityInfo info = validate_regular(g);
  DecomposeOptions dopts;
  int l = 0;
  if (shape == Shape::Paths) {
    auto color = two_coloring(g);
    if (!color) throw Error(ErrorCode::NotBipartite, "graph is not bipartite");
    dopts.fixed_sides = std::move(*color);
    l = info.n / (2 * info.d);
  } else {
    l = info.n / (info.d + 1);
  }
  if (Rational(info.d) < config.c_min * Rational(info.n)) {
    logger()->warn("degree {} is below c_min * n; running best effort", info.d);
  }
  const ParameterLadder ladder = config.ladder.apply(ParameterLadder::defaults(info));
  ladder.validate();

  auto t0 = Clock::now();
  Decomposition dec;
  try {
    dec = decompose(g, info, ladder, dopts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) throw;
    throw stage_error("decompose", e.what(), {{"code", to_string(e.code())}, {"detail", e.detail()}});
  }
  const double decompose_ms = ms_since(t0);
  const int r = static_cast<int>(dec.clusters.size());
  if (r > l + 1) throw stage_error("decompose", "more clusters than l + 1", {{"r", r}, {"l", l}});

  std::optional<Error> last;
  const int attempts = std::max(1, config.assembly_attempts);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    try {
      Built built = attempt_once(g, dec, config, mix(seed, static_cast<std::uint64_t>(attempt)), l, shape);
      Result result;
      VerificationReport report;
      if constexpr (std::is_same_v<Result, CycleResult>) {
        if (config.exact_count) result.stats.padded = pad_cycles(g, built.parts, l);
        result.partition.cycles = std::move(built.parts);
        report = verify_cycle_partition(g, result.partition.cycles);
      } else {
        result.partition.paths = std::move(built.parts);
        report = verify_path_partition(g, result.partition.paths, true);
      }
      if (!report.pass) {
        nlohmann::json failed = nlohmann::json::array();
        for (const auto& c : report.checks) {
          if (!c.pass) failed.push_back({{"check", c.name}, {"detail", c.detail}});
        }
        throw stage_error("verify", "assembled partition failed verification", failed);
      }
      result.stats.l = l;
      result.stats.r = r;
      result.stats.s = dec.num_near();
      result.stats.attempts = attempt + 1;
      result.stats.balance_retries = built.balance_retries;
      result.stats.forest_retries = built.forest_retries;
      result.stats.two_matching_case = built.two_matching;
      result.stats.timings.decompose_ms = decompose_ms;
      result.stats.timings.forest_ms = built.forest_ms;
      result.stats.timings.hamilton_ms = built.hamilton_ms;
      result.stats.timings.total_ms = ms_since(start);
      result.decomposition = std::move(dec);
      result.forest = std::move(built.forest);
      result.forest_report = built.report;
      return result;
    } catch (const Error& e) {
      if (!retryable(e.code())) throw;
      logger()->info("assembly attempt {} failed: {}", attempt + 1, e.what());
      last = e;
    }
  }
  throw Error(ErrorCode::AssemblyFailed, std::string("assembly failed after retries: ") + last->what(),
              {{"stage", stage_of(*last)},
               {"diagnostic", {{"code", to_string(last->code())}, {"detail", last->detail()}}},
               {"attempts", attempts}});
}

}  // namespace

CycleResult partition_cycles(const Graph& g, const AssemblyConfig& config, std::uint64_t seed) {
  return run_pipeline<CycleResult>(g, config, seed, Shape::Cycles);
}

PathResult partition_paths_bipartite(const Graph& g, const AssemblyConfig& config, std::uint64_t seed) {
  return run_pipeline<PathResult>(g, config, seed, Shape::Paths);
}

}  // namespace cyclecut
