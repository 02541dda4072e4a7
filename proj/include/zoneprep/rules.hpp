// Copyright 2026 The zoneprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "zoneprep/model.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace zoneprep {

/// How idle qubits are protected from the Rydberg beam.
enum class LayoutMode : std::uint8_t {
  /// Idle qubits must leave the entangling rows.
  Shielded,
  /// Idle qubits must sit alone in their interaction site.
  NoShielding,
};

[[nodiscard]] inline auto to_string(LayoutMode mode) -> std::string_view {
  return mode == LayoutMode::Shielded ? "shielded" : "no-shielding";
}

/// Accepts "shielded" and "no-shielding"; throws FormatError otherwise.
[[nodiscard]] inline auto layout_from_string(std::string_view text)
    -> LayoutMode {
  if (text == "shielded") {
    return LayoutMode::Shielded;
  }
  if (text == "no-shielding") {
    return LayoutMode::NoShielding;
  }
  throw FormatError("unknown layout '" + std::string(text) + "'");
}

// Rule family identifiers shared by the encoder and the validator report.
namespace rule {
inline constexpr std::string_view kBounds = "bounds";
inline constexpr std::string_view kTrapOccupancy = "trap-occupancy";
inline constexpr std::string_view kSlmCenter = "slm-center";
inline constexpr std::string_view kColumnOrder = "aod-column-order";
inline constexpr std::string_view kRowOrder = "aod-row-order";
inline constexpr std::string_view kGateExecution = "gate-execution";
inline constexpr std::string_view kGateExclusivity = "gate-exclusivity";
inline constexpr std::string_view kShielding = "shielding";
inline constexpr std::string_view kIdleSeparation = "idle-separation";
inline constexpr std::string_view kExecTrapType = "exec-trap-type";
inline constexpr std::string_view kExecSlmFixed = "exec-slm-fixed";
inline constexpr std::string_view kExecAodLines = "exec-aod-lines";
inline constexpr std::string_view kStoreCenter = "store-center";
inline constexpr std::string_view kStorePosition = "store-position";
inline constexpr std::string_view kStoreLines = "store-lines";
inline constexpr std::string_view kLoadColumnOrder = "load-column-order";
inline constexpr std::string_view kLoadRowOrder = "load-row-order";
inline constexpr std::string_view kLoadLines = "load-lines";
inline constexpr std::string_view kGateCover = "gate-cover";
inline constexpr std::string_view kPinned = "pinned";
inline constexpr std::string_view kTransferCost = "transfer-cost";
} // namespace rule

} // namespace zoneprep
