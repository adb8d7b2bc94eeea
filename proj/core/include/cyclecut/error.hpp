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

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace cyclecut {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  NotRegular,
  NotBipartite,
  SizeTooSmall,
  GenerationFailed,
  EmptySide,
  RefinementFailed,
  DecompositionFailed,
  ClassificationAmbiguous,
  NotAlmostBalancing,
  BalancingFailed,
  CycleDetected,
  Disconnected,
  MergeFailed,
  NoExtensionVertex,
  ReservoirFailed,
  NoPerfectMatching,
  RotationExhausted,
  ConnectFailed,
  AbsorbFailed,
  HamFailed,
  AssemblyFailed,
  TwoMatchingMissing,
  TooLarge,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. detail() carries structured
// diagnostics (offending vertices, best partial result, stage name).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, nlohmann::json detail = nlohmann::json::object());

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  nlohmann::json detail_;
};

}  // namespace cyclecut
