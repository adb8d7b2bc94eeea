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

#include "cyclecut/io.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <unordered_map>

#include "cyclecut/error.hpp"

namespace cyclecut {

using nlohmann::json;

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.num_vertices()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
    throw Error(ErrorCode::ParseError, "graph document needs \"n\" and \"edges\"");
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<std::int64_t>() < 0 || doc["n"].get<std::int64_t>() > (1 << 24)) {
    throw Error(ErrorCode::ParseError, "\"n\" must be a non-negative integer");
  }
  if (!doc["edges"].is_array()) throw Error(ErrorCode::ParseError, "\"edges\" must be an array");
  std::vector<Edge> edges;
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw Error(ErrorCode::ParseError, "each edge must be a pair of integers", {{"edge", e}});
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return Graph::from_edges(doc["n"].get<int>(), edges);
}

std::string graph_to_dot(const Graph& g) {
  std::ostringstream out;
  out << "graph G {\n";
  for (Vertex v = 0; v < g.num_vertices(); ++v) out << "  " << v << ";\n";
  for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

json ladder_to_json(const ParameterLadder& ladder) {
  return {{"eta", format_rational(ladder.eta)},     {"beta", format_rational(ladder.beta)},
          {"gamma", format_rational(ladder.gamma)}, {"zeta", format_rational(ladder.zeta)},
          {"delta", format_rational(ladder.delta)}, {"r_max", ladder.r_max}};
}

json decomposition_to_json(const Decomposition& dec) {
  json clusters = json::array();
  for (const auto& c : dec.clusters) {
    json item = {{"vertices", c.vertices}, {"kind", c.is_near() ? "near" : "far"}, {"uncut", c.uncut}};
    if (c.is_near()) {
      item["x"] = c.x;
      item["y"] = c.y;
    }
    clusters.push_back(std::move(item));
  }
  return {{"n", dec.n},
          {"ladder", ladder_to_json(dec.ladder)},
          {"beta", format_rational(dec.beta)},
          {"gamma", format_rational(dec.gamma)},
          {"clusters", std::move(clusters)}};
}

json matching_to_json(const BalancingMatching& m, std::span<const int> sigma) {
  json edges = json::array();
  for (auto [u, v] : m.edges) edges.push_back({{u, 1}, {v, 2}});
  return {{"edges", std::move(edges)}, {"sigma", std::vector<int>(sigma.begin(), sigma.end())}};
}

json forest_to_json(const LinearForest& f) { return {{"paths", f.paths}}; }

json forest_report_to_json(const ForestReport& report) {
  return {{"a", report.a},
          {"b", report.b},
          {"c", report.c},
          {"d", report.d},
          {"e", report.e},
          {"all", report.all()},
          {"size_bound", report.size_bound},
          {"size", report.size},
          {"h0_size", report.h0_size},
          {"leaves", report.leaves},
          {"residual", report.residual}};
}

json partition_to_json(PartitionKind kind, const std::vector<Path>& parts) {
  return {{"kind", kind == PartitionKind::Cycles ? "cycles" : "paths"}, {"parts", parts}};
}

PartitionDocument partition_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.contains("parts")) {
    throw Error(ErrorCode::ParseError, "partition document needs \"kind\" and \"parts\"");
  }
  PartitionDocument out;
  const auto& kind = doc["kind"];
  if (kind == "cycles") {
    out.kind = PartitionKind::Cycles;
  } else if (kind == "paths") {
    out.kind = PartitionKind::Paths;
  } else {
    throw Error(ErrorCode::ParseError, "\"kind\" must be \"cycles\" or \"paths\"");
  }
  if (!doc["parts"].is_array()) throw Error(ErrorCode::ParseError, "\"parts\" must be an array");
  for (const auto& part : doc["parts"]) {
    if (!part.is_array()) throw Error(ErrorCode::ParseError, "each part must be an array of vertices");
    Path p;
    for (const auto& v : part) {
      if (!v.is_number_integer()) throw Error(ErrorCode::ParseError, "vertices must be integers");
      p.push_back(v.get<int>());
    }
    out.parts.push_back(std::move(p));
  }
  return out;
}

std::string partition_to_dot(const Graph& g, PartitionKind kind, const std::vector<Path>& parts) {
  static constexpr const char* kColors[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal"};
  std::unordered_map<std::uint64_t, int> used_by;
  const int n = g.num_vertices();
  auto key = [](Vertex a, Vertex b) {
    return (static_cast<std::uint64_t>(std::min(a, b)) << 32) | static_cast<std::uint32_t>(std::max(a, b));
  };
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Path& p = parts[i];
    const std::size_t pairs = kind == PartitionKind::Cycles && p.size() >= 3 ? p.size() : (p.empty() ? 0 : p.size() - 1);
    for (std::size_t j = 0; j < pairs; ++j) {
      const Vertex a = p[j];
      const Vertex b = p[(j + 1) % p.size()];
      if (a >= 0 && a < n && b >= 0 && b < n) used_by[key(a, b)] = static_cast<int>(i);
    }
  }
  std::ostringstream out;
  out << "graph G {\n";
  for (Vertex v = 0; v < n; ++v) out << "  " << v << ";\n";
  for (auto [u, v] : g.edges()) {
    const auto it = used_by.find(key(u, v));
    const int part = it == used_by.end() ? -1 : it->second;
    out << "  " << u << " -- " << v;
    if (part >= 0) {
      out << " [color=" << kColors[static_cast<std::size_t>(part) % std::size(kColors)] << ", penwidth=3]";
    } else {
      out << " [color=gray]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

json report_to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"pass", report.pass}, {"checks", std::move(checks)}, {"counts", report.counts}};
}

json stats_to_json(const AssemblyStats& stats) {
  return {{"l", stats.l},
          {"r", stats.r},
          {"s", stats.s},
          {"attempts", stats.attempts},
          {"balance_retries", stats.balance_retries},
          {"forest_retries", stats.forest_retries},
          {"two_matching_case", stats.two_matching_case},
          {"padded", stats.padded},
          {"timings_ms",
           {{"decompose", stats.timings.decompose_ms},
            {"forest", stats.timings.forest_ms},
            {"hamilton", stats.timings.hamilton_ms},
            {"total", stats.timings.total_ms}}}};
}

}  // namespace cyclecut
