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

#include "zoneprep/fidelity.hpp"
#include "zoneprep/model.hpp"
#include "zoneprep/rules.hpp"
#include "zoneprep/solve.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace zoneprep::cli {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,
  kNoSchedule = 2,
  kSolverFailure = 3,
  kFormatError = 4,
};

/// A named architecture together with the idle-qubit rule it is used with.
struct LayoutPreset {
  std::string name;
  Architecture arch;
  LayoutMode mode = LayoutMode::Shielded;
};

/// no-shielding, bottom-storage and double-sided, in table order.
[[nodiscard]] auto layout_presets() -> std::vector<LayoutPreset>;
[[nodiscard]] auto layout_preset(const std::string& name) -> LayoutPreset;

enum class CellStatus { Solved, NoSchedule, SolverFailure };

/// One code/layout combination of the comparison table.
struct TableCell {
  std::string code;
  std::string layout;
  int num_cz = 0;
  CellStatus status = CellStatus::NoSchedule;
  int rydberg_stages = 0;
  int transfer_stages = 0;
  double time_us = 0.0;
  double asp = 0.0;
  bool validated = false;
  double solver_seconds = 0.0;
  std::string message;
  Schedule schedule;
  MinimalityCertificate certificate;
  FidelityReport fidelity;
};

/**
 * Compiles, validates and scores one circuit. With fixed_stages set only
 * that stage count is tried.
 */
[[nodiscard]] auto run_cell(const std::string& code_name,
                            const Circuit& circuit, const LayoutPreset& preset,
                            SolveConfig cfg,
                            std::optional<int> fixed_stages = std::nullopt)
    -> TableCell;

[[nodiscard]] auto table_csv(const std::vector<TableCell>& cells)
    -> std::string;
[[nodiscard]] auto table_pretty(const std::vector<TableCell>& cells)
    -> std::string;

/// Entry point of the tool; returns the process exit code.
auto run(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) -> int;

} // namespace zoneprep::cli
