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

#include "cyclecut/error.hpp"

namespace cyclecut {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::SizeTooSmall: return "SizeTooSmall";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::RefinementFailed: return "RefinementFailed";
    case ErrorCode::DecompositionFailed: return "DecompositionFailed";
    case ErrorCode::ClassificationAmbiguous: return "ClassificationAmbiguous";
    case ErrorCode::NotAlmostBalancing: return "NotAlmostBalancing";
    case ErrorCode::BalancingFailed: return "BalancingFailed";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::MergeFailed: return "MergeFailed";
    case ErrorCode::NoExtensionVertex: return "NoExtensionVertex";
    case ErrorCode::ReservoirFailed: return "ReservoirFailed";
    case ErrorCode::NoPerfectMatching: return "NoPerfectMatching";
    case ErrorCode::RotationExhausted: return "RotationExhausted";
    case ErrorCode::ConnectFailed: return "ConnectFailed";
    case ErrorCode::AbsorbFailed: return "AbsorbFailed";
    case ErrorCode::HamFailed: return "HamFailed";
    case ErrorCode::AssemblyFailed: return "AssemblyFailed";
    case ErrorCode::TwoMatchingMissing: return "TwoMatchingMissing";
    case ErrorCode::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, nlohmann::json detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(std::move(detail)) {}

}  // namespace cyclecut
