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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cyclecut/decomposition.hpp"
#include "cyclecut/graph.hpp"
#include "cyclecut/linear_forest.hpp"

namespace cyclecut {

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerificationReport {
  bool pass = true;
  std::vector<Check> checks;
  nlohmann::json counts = nlohmann::json::object();

  const Check* find(std::string_view name) const;
  bool passed(std::string_view name) const;
};

// Pure and total: malformed parts become failed checks, never exceptions.
VerificationReport verify_cycle_partition(const Graph& g, const std::vector<Path>& cycles);
VerificationReport verify_path_partition(const Graph& g, const std::vector<Path>& paths, bool bipartite,
                                         bool allow_singletons = false);
VerificationReport verify_forest(const Graph& g, const Decomposition& dec, const LinearForest& f,
                                 const Rational& xi = Rational(1, 10));

// Minimum number of disjoint cycles (length >= 3) covering V(G), nullopt
// when none exists. Throws TooLarge for n > 14.
std::optional<int> brute_min_cycle_partition(const Graph& g);

// Throws TooLarge for |working| > 20.
bool brute_ham_path(const Graph& g, std::span<const Vertex> working, Vertex x, Vertex y);

}  // namespace cyclecut
