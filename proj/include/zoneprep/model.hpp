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

#include <cstddef>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zoneprep {

/// Raised when an input document cannot be parsed or is structurally wrong.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a value violates a domain invariant (bounds, ordering, ...).
class InvariantError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/**
 * @brief Fidelities and durations of the physical operations.
 * @details Durations are in microseconds. The shuttling speed is given as
 * microseconds per micrometre of travelled distance.
 */
struct FigureOfMeritTable {
  double f_cz = 0.995;
  double f_id_ryd = 0.998;
  double f_local_rz = 0.99912;
  double f_global_ry = 0.9999;
  double f_transfer = 0.999;
  double f_shuttle = 1.0;
  double t_cz = 0.27;
  double t_local_rz = 5.0;
  double t_global_ry = 1.0;
  double t_transfer = 200.0;
  double shuttle_speed = 0.55;
  double t_eff = 1'000'000.0;

  auto operator==(const FigureOfMeritTable&) const -> bool = default;
};

enum class ZoneKind : std::uint8_t { Entangling, Storage };

/**
 * @brief A zoned neutral atom architecture.
 * @details The plane is a grid of interaction sites with coordinates
 * (0..x_max) x (0..y_max). Each site has an SLM trap in its centre and AOD
 * trap positions at signed offsets |h| <= h_max, |v| <= v_max around it.
 * Site rows e_min..e_max form the entangling zone, all other rows are storage.
 */
struct Architecture {
  int x_max = 0;
  int y_max = 0;
  int h_max = 0;
  int v_max = 0;
  int c_max = 0;
  int r_max = 0;
  int e_min = 0;
  int e_max = 0;
  int interaction_radius = 1;
  int num_stages_cap = 32;
  double site_pitch_um = 14.0;
  double trap_pitch_um = 1.0;
  double zone_gap_um = 20.0;
  FigureOfMeritTable fom;

  /// Throws InvariantError naming the offending field.
  void validate() const;

  [[nodiscard]] auto num_columns() const -> int { return c_max + 1; }
  [[nodiscard]] auto num_rows() const -> int { return r_max + 1; }

  auto operator==(const Architecture&) const -> bool = default;
};

using GatePair = std::pair<int, int>;

/// CZ gates of a graph-state preparation plus its single-qubit frame.
struct Circuit {
  std::string name;
  int num_qubits = 0;
  /// Gate i of the one-based list <g_1..g_G> is cz_gates[i - 1].
  std::vector<GatePair> cz_gates;
  std::set<int> hadamard_qubits;
  /// All qubits start in |+>. Kept as a flag so that bare CZ lists can be
  /// scored without a prologue.
  bool init_plus = true;

  void validate() const;
  [[nodiscard]] auto num_gates() const -> int {
    return static_cast<int>(cz_gates.size());
  }
  auto operator==(const Circuit&) const -> bool = default;
};

struct QubitPlacement {
  int x = 0;
  int y = 0;
  int h = 0;
  int v = 0;
  bool in_aod = false;
  /// AOD column/row index; only meaningful when in_aod.
  int col = 0;
  int row = 0;

  auto operator==(const QubitPlacement&) const -> bool = default;
};

enum class StageKind : std::uint8_t { Execution, Transfer };

struct Stage {
  StageKind kind = StageKind::Execution;
  /// One entry per qubit, configuration at the start of the stage.
  std::vector<QubitPlacement> placements;
  /// 1-based gate indices executed by this stage's Rydberg beam.
  std::set<int> executed_gates;
  std::vector<bool> store_cols;
  std::vector<bool> store_rows;
  std::vector<bool> load_cols;
  std::vector<bool> load_rows;

  auto operator==(const Stage&) const -> bool = default;
};

struct Schedule {
  std::vector<Stage> stages;

  [[nodiscard]] auto num_stages() const -> int {
    return static_cast<int>(stages.size());
  }
  [[nodiscard]] auto num_execution_stages() const -> int;
  [[nodiscard]] auto num_transfer_stages() const -> int;
  auto operator==(const Schedule&) const -> bool = default;
};

struct PositionUm {
  double x = 0.0;
  double y = 0.0;
};

[[nodiscard]] auto zone_of(const Architecture& arch, int y) -> ZoneKind;

/// Extra vertical space inserted at every zone boundary so that the closest
/// traps of neighbouring zones are at least zone_gap_um apart.
[[nodiscard]] auto zone_gap_extra_um(const Architecture& arch) -> double;

[[nodiscard]] auto position_um(const Architecture& arch,
                               const QubitPlacement& p) -> PositionUm;

[[nodiscard]] auto distance_um(const PositionUm& a, const PositionUm& b)
    -> double;

// JSON (de)serialization. Parsers validate and throw FormatError or
// InvariantError.
[[nodiscard]] auto to_json(const FigureOfMeritTable& fom) -> nlohmann::json;
[[nodiscard]] auto to_json(const Architecture& arch) -> nlohmann::json;
[[nodiscard]] auto to_json(const Circuit& circuit) -> nlohmann::json;
[[nodiscard]] auto to_json(const QubitPlacement& p) -> nlohmann::json;
[[nodiscard]] auto to_json(const Schedule& schedule) -> nlohmann::json;

[[nodiscard]] auto architecture_from_json(const nlohmann::json& j)
    -> Architecture;
[[nodiscard]] auto circuit_from_json(const nlohmann::json& j) -> Circuit;
[[nodiscard]] auto schedule_from_json(const nlohmann::json& j) -> Schedule;

[[nodiscard]] auto load_architecture(std::string_view json_text)
    -> Architecture;
[[nodiscard]] auto load_circuit(std::string_view json_text) -> Circuit;
[[nodiscard]] auto load_schedule(std::string_view json_text) -> Schedule;

[[nodiscard]] auto read_text_file(const std::string& path) -> std::string;
void write_text_file(const std::string& path, std::string_view text);

/// The evaluation grid: 8 x 7 sites, offsets +-2, six AOD lines per axis,
/// interaction radius 2.
[[nodiscard]] auto zoned_architecture(int e_min, int e_max) -> Architecture;
[[nodiscard]] auto no_shielding_architecture() -> Architecture;
[[nodiscard]] auto bottom_storage_architecture() -> Architecture;
[[nodiscard]] auto double_sided_storage_architecture() -> Architecture;

[[nodiscard]] auto to_string(ZoneKind kind) -> std::string_view;
[[nodiscard]] auto to_string(StageKind kind) -> std::string_view;

} // namespace zoneprep
