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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "builders.hpp"
#include "oracles.hpp"
#include "cyclecut/assembler.hpp"
#include "cyclecut/balancing.hpp"
#include "cyclecut/error.hpp"
#include "cyclecut/generators.hpp"
#include "cyclecut/hamiltonicity.hpp"
#include "cyclecut/linear_forest.hpp"
#include "cyclecut/verification.hpp"

namespace cyclecut {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages.
class Failures {
 public:
  void add(const std::string& msg) {
    ++count_;
    if (count_ <= 3) {
      if (!text_.empty()) text_ += "; ";
      text_ += msg;
    }
  }
  bool any() const { return count_ > 0; }
  Outcome outcome(const std::string& summary) const {
    if (!any()) return {true, summary};
    return {false, summary + "; " + std::to_string(count_) + " failure(s): " + text_};
  }

 private:
  int count_ = 0;
  std::string text_;
};

// Forest reports gathered from the partition runs of criteria 1-4.
struct ForestLog {
  int runs = 0;
  Failures failures;

  void record(const Graph& g, const std::string& name, const Decomposition& dec, const LinearForest& f,
              const ForestReport& report) {
    ++runs;
    if (!report.all()) failures.add(name + ": reported properties not all true");
    const VerificationReport v = verify_forest(g, dec, f);
    if (!v.pass) {
      for (const auto& c : v.checks) {
        if (!c.pass) failures.add(name + ": " + c.name + " " + c.detail);
      }
    }
    // |X_i n V(H)| - |Y_i n V(H)| = |X_i| - |Y_i|
    const VertexList used = f.vertices();
    auto count_in = [&](const VertexList& side) {
      int k = 0;
      for (Vertex v : side) k += std::binary_search(used.begin(), used.end(), v);
      return k;
    };
    for (const auto& c : dec.clusters) {
      if (!c.is_near()) continue;
      if (count_in(c.x) - count_in(c.y) != static_cast<int>(c.x.size()) - static_cast<int>(c.y.size())) {
        failures.add(name + ": near cluster sides unbalanced after removing the forest");
      }
    }
  }
};

ForestLog forest_log;

int cycle_bound(const Graph& g) { return g.num_vertices() / (g.degree(0) + 1); }

Outcome tight_cliques() {
  Failures f;
  int runs = 0;
  for (int k = 1; k <= 6; ++k) {
    for (int size = 4; size <= 10; ++size) {
      const Graph g = gen_clique_union(std::vector<int>(static_cast<std::size_t>(k), size));
      const std::string name = "K" + std::to_string(size) + "x" + std::to_string(k);
      ++runs;
      try {
        const CycleResult r = partition_cycles(g, {}, static_cast<std::uint64_t>(k * 100 + size));
        if (static_cast<int>(r.partition.cycles.size()) != k) f.add(name + ": wrong cycle count");
        if (cycle_bound(g) != k) f.add(name + ": bound differs from k");
        if (!verify_cycle_partition(g, r.partition.cycles).pass) f.add(name + ": verifier rejected");
        if (!testing::covers_exactly(g, r.partition.cycles, true)) f.add(name + ": oracle rejected");
        forest_log.record(g, name, r.decomposition, r.forest, r.forest_report);
      } catch (const Error& e) {
        f.add(name + ": " + e.what());
      }
    }
  }
  return f.outcome(std::to_string(runs) + " instances");
}

Outcome tight_bicliques() {
  Failures f;
  int runs = 0;
  for (int k = 1; k <= 6; ++k) {
    for (int d = 2; d <= 8; ++d) {
      const Graph g = gen_bipartite_union(k, d);
      const std::string name = "K" + std::to_string(d) + "," + std::to_string(d) + "x" + std::to_string(k);
      ++runs;
      try {
        const PathResult r = partition_paths_bipartite(g, {}, static_cast<std::uint64_t>(k * 100 + d));
        if (static_cast<int>(r.partition.paths.size()) != k) f.add(name + ": wrong path count");
        if (!verify_path_partition(g, r.partition.paths, true).pass) f.add(name + ": verifier rejected");
        if (!testing::covers_exactly(g, r.partition.paths, false)) f.add(name + ": oracle rejected");
        forest_log.record(g, name, r.decomposition, r.forest, r.forest_report);
      } catch (const Error& e) {
        f.add(name + ": " + e.what());
      }
    }
  }
  return f.outcome(std::to_string(runs) + " instances");
}

Outcome petersen() {
  Failures f;
  const Graph g = gen_petersen();
  try {
    const CycleResult r = partition_cycles(g, {}, 1);
    if (r.partition.cycles.size() != 2) f.add("emitted " + std::to_string(r.partition.cycles.size()) + " cycles");
    if (r.stats.l != 2) f.add("l = " + std::to_string(r.stats.l));
    if (!verify_cycle_partition(g, r.partition.cycles).pass) f.add("verifier rejected");
    forest_log.record(g, "petersen", r.decomposition, r.forest, r.forest_report);
  } catch (const Error& e) {
    f.add(e.what());
  }
  const auto kmin = brute_min_cycle_partition(g);
  if (kmin != 2) f.add("oracle minimum is not 2");
  if (testing::search_min_cycle_cover(g) != 2) f.add("independent search minimum is not 2");
  return f.outcome("optimum 2, one cycle infeasible");
}

Outcome dirac_random() {
  Failures f;
  int runs = 0;
  int ok = 0;
  std::ostringstream per_n;
  for (int n : {20, 30, 40, 60}) {
    const int d0 = (n / 2) % 2 == 0 ? n / 2 : n / 2 + 1;
    int ok_n = 0;
    for (int seed = 0; seed < 25; ++seed) {
      const int d = std::min(d0 + 2 * (seed % 3), n - 2);
      const Graph g = gen_random_regular(n, d, static_cast<std::uint64_t>(1000 * n + seed));
      const std::string name = "n" + std::to_string(n) + "d" + std::to_string(d) + "s" + std::to_string(seed);
      ++runs;
      try {
        const CycleResult r = partition_cycles(g, {}, static_cast<std::uint64_t>(seed));
        const bool good = verify_cycle_partition(g, r.partition.cycles).pass &&
                          testing::covers_exactly(g, r.partition.cycles, true) &&
                          static_cast<int>(r.partition.cycles.size()) <= cycle_bound(g);
        if (good) {
          ++ok;
          ++ok_n;
        } else {
          f.add(name + ": emitted an invalid partition");
        }
        forest_log.record(g, name, r.decomposition, r.forest, r.forest_report);
      } catch (const Error& e) {
        per_n << " " << name << " failed (" << e.what() << ")";
      }
    }
    per_n << " n=" << n << ":" << ok_n << "/25";
  }
  Outcome out = f.outcome(std::to_string(ok) + "/" + std::to_string(runs) + " verified;" + per_n.str());
  if (ok * 100 < 95 * runs) out.pass = false;
  return out;
}

Outcome oracle_floor() {
  Failures f;
  int emitted = 0;
  int graphs = 0;
  std::mt19937_64 rng(5);
  for (int seed = 0; seed < 200; ++seed) {
    const int n = 4 + 2 * (seed % 5);
    Graph g(0);
    do {
      g = gen_random_regular(n, 3, rng());
    } while (components(g).size() != 1);
    ++graphs;
    const auto kmin = brute_min_cycle_partition(g);
    try {
      const CycleResult r = partition_cycles(g, {}, static_cast<std::uint64_t>(seed));
      ++emitted;
      if (!verify_cycle_partition(g, r.partition.cycles).pass) f.add("seed " + std::to_string(seed) + ": verifier");
      if (!testing::covers_exactly(g, r.partition.cycles, true)) f.add("seed " + std::to_string(seed) + ": oracle");
      if (!kmin || static_cast<int>(r.partition.cycles.size()) < *kmin) {
        f.add("seed " + std::to_string(seed) + ": beat the optimum");
      }
    } catch (const Error&) {
      // refusing a sparse instance is allowed
    }
  }
  return f.outcome(std::to_string(emitted) + "/" + std::to_string(graphs) + " emitted, none below the optimum");
}

std::vector<int> random_sigma(int n, std::mt19937_64& rng) {
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::shuffle(sigma.begin(), sigma.end(), rng);
  return sigma;
}

Outcome balancing_invariants() {
  Failures f;
  std::mt19937_64 rng(6);
  std::size_t largest = 0;
  for (int i = 0; i < 50; ++i) {
    const int t = 1 + i % 4;
    const int a = 4 + static_cast<int>(rng() % 6);
    const auto p = testing::planted_two_near(a, t, rng());
    const std::string name = "instance " + std::to_string(i);
    try {
      const BalanceResult r = balance_clumps(p.g, p.dec, rng());
      const LiftGraph lift = build_lift(p.g, p.dec);
      const int n = p.g.num_vertices();
      std::vector<char> hit(static_cast<std::size_t>(2 * n), 0);
      std::vector<char> used1(static_cast<std::size_t>(n), 0);
      std::vector<char> used2(static_cast<std::size_t>(n), 0);
      for (auto [u, v] : r.matching.edges) {
        if (!p.g.has_edge(u, v)) f.add(name + ": non-edge");
        if (used1[static_cast<std::size_t>(u)]++ || used2[static_cast<std::size_t>(v)]++) f.add(name + ": not a matching");
        hit[static_cast<std::size_t>(u)] = 1;
        hit[static_cast<std::size_t>(n + v)] = 1;
      }
      int residual = 0;
      int disb_sum = 0;
      for (const Clump& c : lift.clumps()) {
        int top = 0;
        int bottom = 0;
        for (int x : c.top) top += !hit[static_cast<std::size_t>(x)];
        for (int x : c.bottom) bottom += !hit[static_cast<std::size_t>(x)];
        residual += std::abs(top - bottom);
        disb_sum += std::abs(static_cast<int>(c.top.size()) - static_cast<int>(c.bottom.size()));
      }
      const int s = p.dec.num_near();
      if (residual != 0) f.add(name + ": residual " + std::to_string(residual));
      if (static_cast<long>(r.matching.edges.size()) * 2 > static_cast<long>(disb_sum) * s) {
        f.add(name + ": |M| = " + std::to_string(r.matching.edges.size()) + " over bound");
      }
      largest = std::max(largest, r.matching.edges.size());
    } catch (const Error& e) {
      f.add(name + ": " + e.what());
    }
  }
  return f.outcome("50 instances, largest |M| " + std::to_string(largest));
}

Outcome rounding() {
  Failures f;
  std::mt19937_64 rng(7);
  int inputs = 0;
  int tries = 0;
  while (inputs < 100 && tries < 20000) {
    ++tries;
    const auto p = testing::planted_two_near(3 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 4), rng());
    const LiftGraph lift = build_lift(p.g, p.dec);
    const FlowNetwork net = build_network(build_filtered(lift, random_sigma(p.g.num_vertices(), rng)), lift,
                                          validate_regular(p.g));
    const FlowResult flow = max_flow(net);
    if (total_disb(flow.matching, lift) >= Rational(1)) continue;
    ++inputs;
    const std::string name = "input " + std::to_string(inputs);
    try {
      bool cycle_moved = false;
      const FractionalMatching out = round_matching(flow.matching, lift, [&](const RoundingStep& s) {
        if (s.cycle && s.disb_before != s.disb_after) cycle_moved = true;
      });
      if (cycle_moved) f.add(name + ": a cycle step changed a clump");
      for (const auto& w : out.weights) {
        if (w != Rational(1)) f.add(name + ": non-integral weight");
      }
      std::vector<int> deg(static_cast<std::size_t>(lift.num_vertices()), 0);
      for (auto [u, v] : out.edges) {
        if (++deg[static_cast<std::size_t>(u)] > 1 || ++deg[static_cast<std::size_t>(lift.num_base() + v)] > 1) {
          f.add(name + ": not a matching");
        }
      }
      for (int i = 0; i < lift.num_clumps(); ++i) {
        if (signed_disb(out, lift, i) != Rational(0)) f.add(name + ": clump " + std::to_string(i) + " unbalanced");
      }
    } catch (const Error& e) {
      f.add(name + ": " + e.what());
    }
  }
  if (inputs < 100) f.add("only " + std::to_string(inputs) + " eligible inputs");
  return f.outcome(std::to_string(inputs) + " inputs from " + std::to_string(tries) + " flows");
}

Outcome pull_back_acyclic() {
  Failures f;
  std::mt19937_64 rng(8);
  std::size_t edges_total = 0;
  for (int i = 0; i < 200; ++i) {
    Graph g(0);
    Decomposition dec;
    if (i % 2 == 0) {
      auto p = testing::planted_two_near(3 + static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 4), rng());
      g = std::move(p.g);
      dec = std::move(p.dec);
    } else {
      // several far clusters, every cross edge eligible
      const int n = 12 + 2 * static_cast<int>(rng() % 10);
      g = gen_random_regular(n, 5 + static_cast<int>(rng() % 2) * 2, rng());
      dec.n = n;
      VertexList order = testing::range(0, n);
      std::shuffle(order.begin(), order.end(), rng);
      const int parts = 2 + static_cast<int>(rng() % 3);
      for (int c = 0; c < parts; ++c) {
        Cluster cl;
        for (int j = c; j < n; j += parts) cl.vertices.push_back(order[static_cast<std::size_t>(j)]);
        std::sort(cl.vertices.begin(), cl.vertices.end());
        dec.clusters.push_back(std::move(cl));
      }
    }
    const LiftGraph lift = build_lift(g, dec);
    const int n = g.num_vertices();
    const OrderedFilter filter = build_filtered(lift, random_sigma(n, rng));
    std::vector<LiftEdge> cand = filter.edges;
    std::shuffle(cand.begin(), cand.end(), rng);
    std::vector<char> used1(static_cast<std::size_t>(n), 0);
    std::vector<char> used2(static_cast<std::size_t>(n), 0);
    BalancingMatching m;
    for (auto [u, v] : cand) {
      if (used1[static_cast<std::size_t>(u)] || used2[static_cast<std::size_t>(v)]) continue;
      used1[static_cast<std::size_t>(u)] = used2[static_cast<std::size_t>(v)] = 1;
      m.edges.emplace_back(u, v);
    }
    edges_total += m.edges.size();
    try {
      const LinearForest forest = pull_back(m, lift);
      std::size_t e = 0;
      for (const auto& path : forest.paths) e += path.size() - 1;
      if (e != m.edges.size()) f.add("triple " + std::to_string(i) + ": edge count changed");
    } catch (const Error& e) {
      f.add("triple " + std::to_string(i) + ": " + e.what());
    }
  }
  return f.outcome("200 triples, " + std::to_string(edges_total) + " matching edges");
}

Outcome forest_properties() {
  Outcome out = forest_log.failures.outcome(std::to_string(forest_log.runs) + " forests from criteria 1-4");
  if (forest_log.runs == 0) {
    out.pass = false;
    out.detail += "; no runs recorded";
  }
  return out;
}

Outcome ham_vs_oracle() {
  Failures f;
  std::mt19937_64 rng(10);
  int yes = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 12 + 2 * static_cast<int>(rng() % 2);
    const int d = n / 2 + static_cast<int>(rng() % 3);
    const Graph g = gen_random_regular(n, d % 2 == 1 && n % 2 == 1 ? d + 1 : d, rng());
    const HamRequest req = testing::random_request(g, rng, 12);
    const VertexList w = testing::working_of(req);
    const bool want = brute_ham_path(g, w, req.x, req.y);
    if (w.size() <= 11 && testing::perm_ham_path(g, w, req.x, req.y) != want) {
      f.add("request " + std::to_string(i) + ": oracles disagree");
    }
    yes += want;
    try {
      const HamResult r = solve_ham_path(g, req, rng(), {HamMode::Direct});
      if (!want) f.add("request " + std::to_string(i) + ": path claimed where none exists");
      if (!testing::is_path_in(g, r.path, w, req.x, req.y)) f.add("request " + std::to_string(i) + ": invalid path");
    } catch (const Error& e) {
      if (want) f.add("request " + std::to_string(i) + ": missed (" + e.what() + ")");
    }
  }
  return f.outcome("100 requests, " + std::to_string(yes) + " Hamiltonian");
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace cyclecut

int main() {
  using namespace cyclecut;
  const std::vector<Criterion> criteria{
      {1, "tight clique unions", 5, tight_cliques},
      {2, "tight biclique unions", 5, tight_bicliques},
      {3, "Petersen graph", 10, petersen},
      {4, "dense random regular graphs", 60, dirac_random},
      {5, "oracle floor on cubic graphs", 120, oracle_floor},
      {6, "balancing matching invariants", 30, balancing_invariants},
      {7, "rounding correctness", 60, rounding},
      {8, "pull-back acyclicity", 60, pull_back_acyclic},
      {9, "forest properties", 60, forest_properties},
      {10, "Hamilton paths vs oracle", 60, ham_vs_oracle},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) {
      o.pass = false;
      o.detail += "; exceeded " + std::to_string(static_cast<int>(c.limit_s)) + " s";
    }
    failed += !o.pass;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
