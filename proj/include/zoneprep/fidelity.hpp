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

#include <nlohmann/json.hpp>
#include <vector>

namespace zoneprep {

struct StageTiming {
  StageKind kind = StageKind::Execution;
  /// Largest displacement of any qubit into the next stage.
  double shuttle_um = 0.0;
  /// Store and load phases that move at least one qubit (transfer only).
  int transfer_phases = 0;
  double duration_us = 0.0;
};

/**
 * @brief Durations of the stages of a schedule.
 * @details Execution stages take t_cz, transfer stages t_transfer per
 * non-empty phase, and both add shuttle_speed times the largest
 * displacement. The last stage has no shuttle.
 */
[[nodiscard]] auto stage_timeline(const Architecture& arch,
                                  const Schedule& schedule)
    -> std::vector<StageTiming>;

/// How often each fidelity factor was applied.
struct FactorCounts {
  int cz = 0;
  int id_ryd = 0;
  int transfer = 0;
  int local_rz = 0;
  int global_ry = 0;

  auto operator==(const FactorCounts&) const -> bool = default;
};

struct FidelityReport {
  std::vector<StageTiming> per_stage;
  /// Prologue and epilogue single-qubit layers.
  double prologue_us = 0.0;
  double epilogue_us = 0.0;
  double total_time_us = 0.0;
  double t_idle_us = 0.0;
  FactorCounts factors;
  double asp = 1.0;
};

/**
 * Approximated success probability exp(-t_idle / t_eff) times every applied
 * fidelity. A qubit is busy while it takes part in a CZ, a transfer phase
 * or a single-qubit layer, and idle for the rest of the total time.
 */
[[nodiscard]] auto estimate_asp(const Architecture& arch,
                                const Circuit& circuit,
                                const Schedule& schedule) -> FidelityReport;

[[nodiscard]] auto to_json(const FidelityReport& report) -> nlohmann::json;

} // namespace zoneprep
