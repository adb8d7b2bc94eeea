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

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cyclecut/assembler.hpp"
#include "cyclecut/balancing.hpp"
#include "cyclecut/decomposition.hpp"
#include "cyclecut/graph.hpp"
#include "cyclecut/linear_forest.hpp"
#include "cyclecut/verification.hpp"

namespace cyclecut {

nlohmann::json graph_to_json(const Graph& g);
// Throws ParseError on malformed documents and InvalidArgument on bad edges.
Graph graph_from_json(const nlohmann::json& doc);
std::string graph_to_dot(const Graph& g);

nlohmann::json ladder_to_json(const ParameterLadder& ladder);
nlohmann::json decomposition_to_json(const Decomposition& dec);

nlohmann::json matching_to_json(const BalancingMatching& m, std::span<const int> sigma);
nlohmann::json forest_to_json(const LinearForest& f);
nlohmann::json forest_report_to_json(const ForestReport& report);

enum class PartitionKind { Cycles, Paths };

struct PartitionDocument {
  PartitionKind kind = PartitionKind::Cycles;
  std::vector<Path> parts;
};

nlohmann::json partition_to_json(PartitionKind kind, const std::vector<Path>& parts);
PartitionDocument partition_from_json(const nlohmann::json& doc);
// Graph with the edges used by the parts drawn bold and coloured per part.
std::string partition_to_dot(const Graph& g, PartitionKind kind, const std::vector<Path>& parts);

nlohmann::json report_to_json(const VerificationReport& report);
nlohmann::json stats_to_json(const AssemblyStats& stats);

}  // namespace cyclecut
