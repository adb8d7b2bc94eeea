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

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cyclecut/decomposition.hpp"
#include "cyclecut/graph.hpp"
#include "cyclecut/hamiltonicity.hpp"
#include "cyclecut/linear_forest.hpp"
#include "cyclecut/verification.hpp"

namespace cyclecut {

struct LadderOverrides {
  std::optional<Rational> eta;
  std::optional<Rational> beta;
  std::optional<Rational> gamma;
  std::optional<Rational> zeta;
  std::optional<Rational> delta;

  ParameterLadder apply(ParameterLadder ladder) const;
};

struct AssemblyConfig {
  LadderOverrides ladder;
  HamMode mode = HamMode::Auto;
  int max_retries = 50;       // balancing retries per forest build
  int assembly_attempts = 8;  // whole-pipeline restarts with fresh seeds
  Rational flow_deficit{9, 10};
  Rational xi{1, 10};
  Rational c_min{1, 100};
  bool exact_count = false;
  int threads = 1;
};

struct StageTimings {
  double decompose_ms = 0;
  double forest_ms = 0;
  double hamilton_ms = 0;
  double total_ms = 0;
};

struct AssemblyStats {
  int l = 0;
  int r = 0;
  int s = 0;
  int attempts = 0;        // pipeline attempts used (1 = first try)
  int balance_retries = 0;
  int forest_retries = 0;
  bool two_matching_case = false;
  int padded = 0;          // short cycles added by exact-count padding
  StageTimings timings;
};

struct CyclePartition {
  std::vector<Path> cycles;
};

struct PathPartition {
  std::vector<Path> paths;
};

struct CycleResult {
  CyclePartition partition;
  AssemblyStats stats;
  Decomposition decomposition;
  LinearForest forest;
  ForestReport forest_report;
};

struct PathResult {
  PathPartition partition;
  AssemblyStats stats;
  Decomposition decomposition;
  LinearForest forest;
  ForestReport forest_report;
};

// Partition of a regular graph into at most floor(n / (d + 1)) cycles.
// Throws AssemblyFailed (detail: stage, diagnostic) or TwoMatchingMissing.
CycleResult partition_cycles(const Graph& g, const AssemblyConfig& config, std::uint64_t seed);

// Partition of a regular bipartite graph into at most floor(n / 2d) paths.
PathResult partition_paths_bipartite(const Graph& g, const AssemblyConfig& config, std::uint64_t seed);

// Two vertex-disjoint edges between A_i and A_j, each oriented (a_i, a_j).
std::optional<std::pair<Edge, Edge>> find_two_matching(const Graph& g, std::span<const Vertex> ai,
                                                       std::span<const Vertex> aj);

VerificationReport closing_cycle_check(const CyclePartition& partition, const Graph& g);

}  // namespace cyclecut
