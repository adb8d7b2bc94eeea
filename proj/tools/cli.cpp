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

#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cyclecut/assembler.hpp"
#include "cyclecut/decomposition.hpp"
#include "cyclecut/error.hpp"
#include "cyclecut/generators.hpp"
#include "cyclecut/io.hpp"
#include "cyclecut/verification.hpp"

namespace cyclecut::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::uint64_t seed = 0;
  std::string eta, beta, gamma, zeta, delta;
  std::string mode = "auto";
  int max_retries = 50;
  std::string flow_deficit = "9/10";
  bool exact_count = false;
  bool paths = false;
  std::string format = "json";
  int threads = 1;
};

void add_run_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "Random seed");
  cmd->add_option("--eta", cfg.eta, "Ladder override, rational in (0,1)");
  cmd->add_option("--beta", cfg.beta, "Ladder override, rational in (0,1)");
  cmd->add_option("--gamma", cfg.gamma, "Ladder override, rational in (0,1)");
  cmd->add_option("--zeta", cfg.zeta, "Ladder override, rational in (0,1)");
  cmd->add_option("--delta", cfg.delta, "Ladder override, rational in (0,1)");
}

Rational unit_rational(const std::string& name, const std::string& text) {
  const Rational r = parse_rational(text);
  if (!(Rational(0) < r && r < Rational(1))) {
    throw Error(ErrorCode::InvalidArgument, "--" + name + " must lie in (0, 1)", {{"value", text}});
  }
  return r;
}

AssemblyConfig to_assembly(const RunConfig& cfg) {
  AssemblyConfig out;
  if (!cfg.eta.empty()) out.ladder.eta = unit_rational("eta", cfg.eta);
  if (!cfg.beta.empty()) out.ladder.beta = unit_rational("beta", cfg.beta);
  if (!cfg.gamma.empty()) out.ladder.gamma = unit_rational("gamma", cfg.gamma);
  if (!cfg.zeta.empty()) out.ladder.zeta = unit_rational("zeta", cfg.zeta);
  if (!cfg.delta.empty()) out.ladder.delta = unit_rational("delta", cfg.delta);
  out.mode = parse_ham_mode(cfg.mode);
  out.max_retries = cfg.max_retries;
  out.flow_deficit = parse_rational(cfg.flow_deficit);
  if (out.flow_deficit < Rational(0)) throw Error(ErrorCode::InvalidArgument, "--flow-deficit must be non-negative");
  out.exact_count = cfg.exact_count;
  out.threads = cfg.threads;
  return out;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

Graph read_graph(const std::string& path) { return graph_from_json(read_json(path)); }

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  file << text;
}

// Human-readable text goes to stdout when the data went to a file.
std::ostream& notes(const std::string& path, std::ostream& out, std::ostream& err) {
  return path.empty() || path == "-" ? err : out;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      sizes.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "--sizes expects comma-separated integers", {{"value", text}});
    }
  }
  return sizes;
}

int input_error(std::ostream& err, const Error& e) {
  err << "error: " << e.what() << "\n";
  if (!e.detail().empty()) err << e.detail().dump() << "\n";
  return kInputError;
}

// --- bench -----------------------------------------------------------------

struct BenchRow {
  std::string instance;
  int n = 0;
  int d = 0;
  int l = 0;
  int parts = -1;
  bool verified = false;
  double wall_ms = 0;
  int retries = 0;
  std::optional<int> kmin;
};

BenchRow bench_one(const std::string& name, const Graph& g, bool paths, std::uint64_t seed, bool oracle) {
  BenchRow row;
  row.instance = name;
  row.n = g.num_vertices();
  row.d = g.num_vertices() > 0 ? g.degree(0) : 0;
  row.l = paths ? row.n / (2 * row.d) : row.n / (row.d + 1);
  if (oracle) row.kmin = brute_min_cycle_partition(g);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    AssemblyStats stats;
    if (paths) {
      auto r = partition_paths_bipartite(g, {}, seed);
      row.parts = static_cast<int>(r.partition.paths.size());
      row.verified = verify_path_partition(g, r.partition.paths, true).pass;
      stats = r.stats;
    } else {
      auto r = partition_cycles(g, {}, seed);
      row.parts = static_cast<int>(r.partition.cycles.size());
      row.verified = verify_cycle_partition(g, r.partition.cycles).pass;
      stats = r.stats;
    }
    row.retries = stats.attempts - 1 + stats.balance_retries + stats.forest_retries;
  } catch (const Error&) {
    row.parts = -1;
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "instance,n,d,l,parts_emitted,verified,wall_ms,retries,oracle_kmin\n";
  for (const auto& r : rows) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
    out << r.instance << ',' << r.n << ',' << r.d << ',' << r.l << ',' << r.parts << ','
        << (r.verified ? "true" : "false") << ',' << ms << ',' << r.retries << ','
        << (r.kmin ? std::to_string(*r.kmin) : std::string{}) << '\n';
  }
  return out.str();
}

std::vector<BenchRow> run_suite(const std::string& suite, std::uint64_t seed) {
  std::vector<BenchRow> rows;
  if (suite == "tight-families") {
    for (int k = 1; k <= 6; ++k) {
      for (int s = 4; s <= 10; ++s) {
        rows.push_back(bench_one("clique-union-" + std::to_string(k) + "x" + std::to_string(s),
                                 gen_clique_union(std::vector<int>(static_cast<std::size_t>(k), s)), false, seed, false));
      }
    }
    for (int k = 1; k <= 6; ++k) {
      for (int d = 2; d <= 8; ++d) {
        rows.push_back(bench_one("biclique-union-" + std::to_string(k) + "x" + std::to_string(d),
                                 gen_bipartite_union(k, d), true, seed, false));
      }
    }
    rows.push_back(bench_one("petersen", gen_petersen(), false, seed, true));
  } else if (suite == "random-dense") {
    for (int n : {20, 30, 40, 60}) {
      int d = (n + 1) / 2;
      if (d % 2 == 1) ++d;
      for (int s = 0; s < 25; ++s) {
        const std::uint64_t gs = seed + static_cast<std::uint64_t>(s);
        rows.push_back(bench_one("random-" + std::to_string(n) + "-" + std::to_string(d) + "-s" + std::to_string(gs),
                                 gen_random_regular(n, d, gs), false, gs, false));
      }
    }
  } else if (suite == "oracle-small") {
    for (int s = 0; s < 200; ++s) {
      const std::uint64_t gs = seed + static_cast<std::uint64_t>(s);
      const int n = 4 + 2 * (s % 5);
      const Graph g = gen_random_regular(n, 3, gs);
      if (components(g).size() != 1) continue;
      rows.push_back(bench_one("cubic-" + std::to_string(n) + "-s" + std::to_string(gs), g, false, gs, true));
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + suite + "'",
                {{"suites", {"tight-families", "random-dense", "oracle-small"}}});
  }
  return rows;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partition dense regular graphs into few cycles or paths", "cyclecut"};
  app.require_subcommand(1);

  // generate
  std::string family;
  std::string sizes;
  int gen_n = 0;
  int gen_d = 0;
  int gen_k = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  std::string gen_format = "json";
  auto* generate = app.add_subcommand("generate", "Write a test graph");
  generate->add_option("family", family, "clique-union | biclique-union | random-regular | petersen | cycle")->required();
  generate->add_option("--sizes", sizes, "Clique orders, comma separated");
  generate->add_option("-n", gen_n, "Vertex count");
  generate->add_option("-d", gen_d, "Degree");
  generate->add_option("-k", gen_k, "Number of copies");
  generate->add_option("--seed", gen_seed, "Random seed");
  generate->add_option("-o,--out", gen_out, "Output file (stdout when omitted)");
  generate->add_option("--format", gen_format, "json | dot")->check(CLI::IsMember({"json", "dot"}));

  // decompose
  std::string dec_graph;
  std::string dec_out;
  RunConfig dec_cfg;
  bool dec_paths = false;
  auto* decompose_cmd = app.add_subcommand("decompose", "Write the cluster decomposition");
  decompose_cmd->add_option("graph", dec_graph, "Graph JSON file")->required();
  decompose_cmd->add_option("-o,--out", dec_out, "Output file (stdout when omitted)");
  decompose_cmd->add_flag("--paths", dec_paths, "Use the bipartition of a bipartite graph as cluster sides");
  add_run_flags(decompose_cmd, dec_cfg);

  // partition
  std::string part_graph;
  std::string part_out;
  RunConfig cfg;
  auto* partition = app.add_subcommand("partition", "Partition a regular graph into cycles (or paths)");
  partition->add_option("graph", part_graph, "Graph JSON file")->required();
  partition->add_option("-o,--out", part_out, "Output file (stdout when omitted)");
  add_run_flags(partition, cfg);
  partition->add_option("--mode", cfg.mode, "Hamilton path engine")->check(CLI::IsMember({"paper", "direct", "auto"}));
  partition->add_option("--max-retries", cfg.max_retries, "Balancing retries")->check(CLI::PositiveNumber);
  partition->add_option("--flow-deficit", cfg.flow_deficit, "Accepted max-flow shortfall");
  partition->add_flag("--exact-count", cfg.exact_count, "Pad to exactly floor(n/(d+1)) cycles");
  partition->add_flag("--paths", cfg.paths, "Bipartite path partition");
  partition->add_option("--format", cfg.format, "json | dot")->check(CLI::IsMember({"json", "dot"}));
  partition->add_option("--threads", cfg.threads, "Worker threads for per-cluster searches")->check(CLI::PositiveNumber);

  // verify
  std::string ver_graph;
  std::string ver_part;
  auto* verify = app.add_subcommand("verify", "Check a partition against its graph");
  verify->add_option("graph", ver_graph, "Graph JSON file")->required();
  verify->add_option("partition", ver_part, "Partition JSON file")->required();

  // bench
  std::string suite;
  std::uint64_t bench_seed = 0;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite and write CSV");
  bench->add_option("suite", suite, "tight-families | random-dense | oracle-small")->required();
  bench->add_option("--seed", bench_seed, "Base seed");
  bench->add_option("-o,--out", bench_out, "CSV file (stdout when omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*generate) {
      Graph g(0);
      if (family == "clique-union") {
        g = gen_clique_union(parse_sizes(sizes));
      } else if (family == "biclique-union") {
        g = gen_bipartite_union(gen_k, gen_d);
      } else if (family == "random-regular") {
        g = gen_random_regular(gen_n, gen_d, gen_seed);
      } else if (family == "petersen") {
        g = gen_petersen();
      } else if (family == "cycle") {
        g = gen_cycle(gen_n);
      } else {
        throw Error(ErrorCode::InvalidArgument, "unknown family '" + family + "'");
      }
      write_text(gen_out, gen_format == "dot" ? graph_to_dot(g) : graph_to_json(g).dump(2) + "\n", out);
      const int d = g.num_vertices() > 0 ? g.degree(0) : 0;
      notes(gen_out, out, err) << "n=" << g.num_vertices() << " d=" << d << "\n";
      return kOk;
    }

    if (*decompose_cmd) {
      const Graph g = read_graph(dec_graph);
      const RegularityInfo info = validate_regular(g);
      const AssemblyConfig ac = to_assembly(dec_cfg);
      const ParameterLadder ladder = ac.ladder.apply(ParameterLadder::defaults(info));
      ladder.validate();
      DecomposeOptions options;
      if (dec_paths) {
        auto color = two_coloring(g);
        if (!color) throw Error(ErrorCode::NotBipartite, "graph is not bipartite");
        options.fixed_sides = std::move(*color);
      }
      Decomposition dec;
      try {
        dec = decompose(g, info, ladder, options);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidArgument) throw;
        err << "decomposition failed: " << e.what() << "\n" << e.detail().dump() << "\n";
        return kAssemblyFailed;
      }
      write_text(dec_out, decomposition_to_json(dec).dump(2) + "\n", out);
      notes(dec_out, out, err) << "r=" << dec.clusters.size() << " s=" << dec.num_near() << "\n";
      return kOk;
    }

    if (*partition) {
      const Graph g = read_graph(part_graph);
      const AssemblyConfig ac = to_assembly(cfg);
      std::vector<Path> parts;
      AssemblyStats stats;
      bool verified = false;
      const PartitionKind kind = cfg.paths ? PartitionKind::Paths : PartitionKind::Cycles;
      try {
        if (cfg.paths) {
          auto r = partition_paths_bipartite(g, ac, cfg.seed);
          parts = std::move(r.partition.paths);
          stats = r.stats;
          verified = verify_path_partition(g, parts, true).pass;
        } else {
          auto r = partition_cycles(g, ac, cfg.seed);
          parts = std::move(r.partition.cycles);
          stats = r.stats;
          verified = verify_cycle_partition(g, parts).pass;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::AssemblyFailed && e.code() != ErrorCode::TwoMatchingMissing) throw;
        const json diag = {{"error", to_string(e.code())}, {"message", e.what()}, {"detail", e.detail()}};
        err << diag.dump(2) << "\n";
        return kAssemblyFailed;
      }
      write_text(part_out, cfg.format == "dot" ? partition_to_dot(g, kind, parts)
                                               : partition_to_json(kind, parts).dump(2) + "\n",
                 out);
      auto& summary = notes(part_out, out, err);
      const char* noun = kind == PartitionKind::Cycles ? (parts.size() == 1 ? "cycle" : "cycles")
                                                       : (parts.size() == 1 ? "path" : "paths");
      summary << parts.size() << " " << noun << " (bound " << stats.l << ")\n";
      summary << "l=" << stats.l << " r=" << stats.r << " s=" << stats.s << " attempts=" << stats.attempts
              << " balance_retries=" << stats.balance_retries << " forest_retries=" << stats.forest_retries
              << (stats.two_matching_case ? " two-matching" : "") << "\n";
      char timing[160];
      std::snprintf(timing, sizeof timing, "decompose=%.2fms forest=%.2fms hamilton=%.2fms total=%.2fms\n",
                    stats.timings.decompose_ms, stats.timings.forest_ms, stats.timings.hamilton_ms,
                    stats.timings.total_ms);
      summary << timing;
      return verified ? kOk : kVerifyFailed;
    }

    if (*verify) {
      const Graph g = read_graph(ver_graph);
      const PartitionDocument doc = partition_from_json(read_json(ver_part));
      const VerificationReport report =
          doc.kind == PartitionKind::Cycles
              ? verify_cycle_partition(g, doc.parts)
              : verify_path_partition(g, doc.parts, two_coloring(g).has_value());
      out << report_to_json(report).dump(2) << "\n";
      return report.pass ? kOk : kVerifyFailed;
    }

    if (*bench) {
      const auto rows = run_suite(suite, bench_seed);
      write_text(bench_out, bench_csv(rows), out);
      int ok = 0;
      for (const auto& r : rows) ok += r.verified && r.parts >= 0 && r.parts <= r.l;
      notes(bench_out, out, err) << suite << ": " << ok << "/" << rows.size() << " verified within bound\n";
      return kOk;
    }
  } catch (const Error& e) {
    return input_error(err, e);
  }
  return kInputError;
}

}  // namespace cyclecut::cli
