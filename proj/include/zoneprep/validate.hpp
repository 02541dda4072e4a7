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
#include "zoneprep/rules.hpp"

#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <unordered_map>
#include <vector>

namespace zoneprep {

struct SmtInstance;

struct Violation {
  std::string rule;
  /// Stage the rule was checked at; -1 when not tied to a stage.
  int stage = -1;
  std::vector<int> qubits;
  /// AOD lines or gate numbers, depending on the rule.
  std::vector<int> lines;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  /// Non-fatal findings such as transfer stages that transfer nothing.
  std::vector<Violation> warnings;
  /// Gate number to the stage executing it.
  std::map<int, int> executed_gate_cover;
  bool ok = false;

  [[nodiscard]] auto count(const std::string& rule) const -> int;
};

[[nodiscard]] auto to_json(const Violation& v) -> nlohmann::json;
[[nodiscard]] auto to_json(const ValidationReport& report) -> nlohmann::json;

/// Decodes a model of the instance. Throws FormatError on a missing variable.
[[nodiscard]] auto extract_schedule(
    const SmtInstance& inst,
    const std::unordered_map<std::string, std::int64_t>& model) -> Schedule;

/**
 * Checks every architectural rule directly on the schedule. Throws
 * InvariantError when the schedule's shape does not fit the circuit and
 * architecture.
 */
[[nodiscard]] auto check_schedule(const Architecture& arch,
                                  const Circuit& circuit, LayoutMode layout,
                                  const Schedule& schedule)
    -> ValidationReport;

/// Violations of a single stage configuration, without transitions or gates.
[[nodiscard]] auto check_configuration(const Architecture& arch,
                                       const std::vector<QubitPlacement>& cfg)
    -> std::vector<Violation>;

/// Qubits stored and loaded in the transition from stage t to t + 1.
struct TransferSets {
  std::vector<int> stored;
  std::vector<int> loaded;
};

[[nodiscard]] auto transfers_between(const Stage& from, const Stage& to)
    -> TransferSets;

} // namespace zoneprep
