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

#include "zoneprep/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace zoneprep {
namespace {

using nlohmann::json;

void require(bool cond, const std::string& msg) {
  if (!cond) {
    throw InvariantError(msg);
  }
}

auto get_field(const json& j, const char* key) -> const json& {
  if (!j.is_object()) {
    throw FormatError("expected a JSON object");
  }
  const auto it = j.find(key);
  if (it == j.end()) {
    throw FormatError(std::string("missing required field '") + key + "'");
  }
  return *it;
}

template <typename T> auto get_as(const json& j, const char* key) -> T {
  const auto& v = get_field(j, key);
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
void get_optional(const json& j, const char* key, T& out) {
  const auto it = j.find(key);
  if (it == j.end()) {
    return;
  }
  try {
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

auto parse_text(std::string_view text) -> json {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("JSON parse error: ") + e.what());
  }
}

auto flags_to_json(const std::vector<bool>& flags) -> json {
  auto arr = json::array();
  for (const bool f : flags) {
    arr.push_back(f);
  }
  return arr;
}

auto flags_from_json(const json& j, const char* key) -> std::vector<bool> {
  std::vector<bool> out;
  const auto it = j.find(key);
  if (it == j.end()) {
    return out;
  }
  if (!it->is_array()) {
    throw FormatError(std::string("field '") + key + "' must be an array");
  }
  for (const auto& b : *it) {
    if (!b.is_boolean()) {
      throw FormatError(std::string("field '") + key +
                        "' must contain booleans");
    }
    out.push_back(b.get<bool>());
  }
  return out;
}

} // namespace

void Architecture::validate() const {
  require(x_max >= 0, "x_max must be >= 0");
  require(y_max >= 0, "y_max must be >= 0");
  require(h_max >= 0, "h_max must be >= 0");
  require(v_max >= 0, "v_max must be >= 0");
  require(c_max >= 0, "c_max must be >= 0");
  require(r_max >= 0, "r_max must be >= 0");
  require(e_min >= 0, "e_min must be >= 0");
  require(e_min <= e_max, "e_min > e_max");
  require(e_max <= y_max, "e_max > y_max");
  require(interaction_radius >= 1, "interaction_radius must be >= 1");
  require(num_stages_cap >= 1, "num_stages_cap must be >= 1");
  require(site_pitch_um > 0.0, "site_pitch_um must be > 0");
  require(trap_pitch_um > 0.0, "trap_pitch_um must be > 0");
  require(zone_gap_um > 0.0, "zone_gap_um must be > 0");
  const auto fidelity_ok = [](double f) { return f > 0.0 && f <= 1.0; };
  require(fidelity_ok(fom.f_cz), "fom.f_cz must be in (0, 1]");
  require(fidelity_ok(fom.f_id_ryd), "fom.f_id_ryd must be in (0, 1]");
  require(fidelity_ok(fom.f_local_rz), "fom.f_local_rz must be in (0, 1]");
  require(fidelity_ok(fom.f_global_ry), "fom.f_global_ry must be in (0, 1]");
  require(fidelity_ok(fom.f_transfer), "fom.f_transfer must be in (0, 1]");
  require(fidelity_ok(fom.f_shuttle), "fom.f_shuttle must be in (0, 1]");
  require(fom.t_cz >= 0.0 && fom.t_local_rz >= 0.0 && fom.t_global_ry >= 0.0 &&
              fom.t_transfer >= 0.0 && fom.shuttle_speed >= 0.0,
          "fom durations must be >= 0");
  require(fom.t_eff > 0.0, "fom.t_eff must be > 0");
}

void Circuit::validate() const {
  require(num_qubits >= 0, "num_qubits must be >= 0");
  std::set<GatePair> seen;
  for (std::size_t i = 0; i < cz_gates.size(); ++i) {
    auto [a, b] = cz_gates[i];
    const auto where = "gate " + std::to_string(i + 1);
    require(a != b, where + " acts twice on qubit " + std::to_string(a));
    require(a >= 0 && a < num_qubits && b >= 0 && b < num_qubits,
            where + " has a qubit index outside [0, num_qubits)");
    if (a > b) {
      std::swap(a, b);
    }
    require(seen.emplace(a, b).second, where + " duplicates an earlier pair");
  }
  for (const int q : hadamard_qubits) {
    require(q >= 0 && q < num_qubits,
            "hadamard qubit " + std::to_string(q) + " out of range");
  }
}

auto Schedule::num_execution_stages() const -> int {
  return static_cast<int>(std::ranges::count_if(stages, [](const Stage& s) {
    return s.kind == StageKind::Execution;
  }));
}

auto Schedule::num_transfer_stages() const -> int {
  return num_stages() - num_execution_stages();
}

auto zone_of(const Architecture& arch, int y) -> ZoneKind {
  if (y < 0 || y > arch.y_max) {
    throw InvariantError("row " + std::to_string(y) + " outside [0, " +
                         std::to_string(arch.y_max) + "]");
  }
  return (arch.e_min <= y && y <= arch.e_max) ? ZoneKind::Entangling
                                              : ZoneKind::Storage;
}

auto zone_gap_extra_um(const Architecture& arch) -> double {
  const double nearest =
      arch.site_pitch_um - 2.0 * arch.trap_pitch_um * arch.v_max;
  return std::max(0.0, arch.zone_gap_um - nearest);
}

auto position_um(const Architecture& arch, const QubitPlacement& p)
    -> PositionUm {
  int boundaries_below = 0;
  for (int row = 1; row <= p.y; ++row) {
    if (zone_of(arch, row) != zone_of(arch, row - 1)) {
      ++boundaries_below;
    }
  }
  return {arch.site_pitch_um * p.x + arch.trap_pitch_um * p.h,
          arch.site_pitch_um * p.y + arch.trap_pitch_um * p.v +
              zone_gap_extra_um(arch) * boundaries_below};
}

auto distance_um(const PositionUm& a, const PositionUm& b) -> double {
  return std::hypot(a.x - b.x, a.y - b.y);
}

auto to_json(const FigureOfMeritTable& fom) -> json {
  return {{"f_cz", fom.f_cz},
          {"f_id_ryd", fom.f_id_ryd},
          {"f_local_rz", fom.f_local_rz},
          {"f_global_ry", fom.f_global_ry},
          {"f_transfer", fom.f_transfer},
          {"f_shuttle", fom.f_shuttle},
          {"t_cz", fom.t_cz},
          {"t_local_rz", fom.t_local_rz},
          {"t_global_ry", fom.t_global_ry},
          {"t_transfer", fom.t_transfer},
          {"shuttle_speed", fom.shuttle_speed},
          {"t_eff", fom.t_eff}};
}

auto to_json(const Architecture& arch) -> json {
  return {{"x_max", arch.x_max},
          {"y_max", arch.y_max},
          {"h_max", arch.h_max},
          {"v_max", arch.v_max},
          {"c_max", arch.c_max},
          {"r_max", arch.r_max},
          {"e_min", arch.e_min},
          {"e_max", arch.e_max},
          {"interaction_radius", arch.interaction_radius},
          {"num_stages_cap", arch.num_stages_cap},
          {"site_pitch_um", arch.site_pitch_um},
          {"trap_pitch_um", arch.trap_pitch_um},
          {"zone_gap_um", arch.zone_gap_um},
          {"fom", to_json(arch.fom)}};
}

auto to_json(const Circuit& circuit) -> json {
  auto gates = json::array();
  for (const auto& [a, b] : circuit.cz_gates) {
    gates.push_back({a, b});
  }
  return {{"name", circuit.name},
          {"num_qubits", circuit.num_qubits},
          {"cz_gates", gates},
          {"hadamard_qubits", circuit.hadamard_qubits},
          {"init_plus", circuit.init_plus}};
}

auto to_json(const QubitPlacement& p) -> json {
  return {{"x", p.x},   {"y", p.y},     {"h", p.h},  {"v", p.v},
          {"aod", p.in_aod}, {"c", p.col}, {"r", p.row}};
}

auto to_json(const Schedule& schedule) -> json {
  auto stages = json::array();
  for (const auto& st : schedule.stages) {
    auto placements = json::array();
    for (const auto& p : st.placements) {
      placements.push_back(to_json(p));
    }
    stages.push_back({{"kind", std::string(to_string(st.kind))},
                      {"placements", placements},
                      {"executed_gates", st.executed_gates},
                      {"store_cols", flags_to_json(st.store_cols)},
                      {"store_rows", flags_to_json(st.store_rows)},
                      {"load_cols", flags_to_json(st.load_cols)},
                      {"load_rows", flags_to_json(st.load_rows)}});
  }
  return {{"stages", stages}};
}

auto architecture_from_json(const json& j) -> Architecture {
  Architecture arch;
  arch.x_max = get_as<int>(j, "x_max");
  arch.y_max = get_as<int>(j, "y_max");
  arch.h_max = get_as<int>(j, "h_max");
  arch.v_max = get_as<int>(j, "v_max");
  arch.c_max = get_as<int>(j, "c_max");
  arch.r_max = get_as<int>(j, "r_max");
  arch.e_min = get_as<int>(j, "e_min");
  arch.e_max = get_as<int>(j, "e_max");
  arch.interaction_radius = get_as<int>(j, "interaction_radius");
  get_optional(j, "num_stages_cap", arch.num_stages_cap);
  get_optional(j, "site_pitch_um", arch.site_pitch_um);
  get_optional(j, "trap_pitch_um", arch.trap_pitch_um);
  get_optional(j, "zone_gap_um", arch.zone_gap_um);
  if (const auto it = j.find("fom"); it != j.end()) {
    if (!it->is_object()) {
      throw FormatError("field 'fom' must be an object");
    }
    auto& f = arch.fom;
    get_optional(*it, "f_cz", f.f_cz);
    get_optional(*it, "f_id_ryd", f.f_id_ryd);
    get_optional(*it, "f_local_rz", f.f_local_rz);
    get_optional(*it, "f_global_ry", f.f_global_ry);
    get_optional(*it, "f_transfer", f.f_transfer);
    get_optional(*it, "f_shuttle", f.f_shuttle);
    get_optional(*it, "t_cz", f.t_cz);
    get_optional(*it, "t_local_rz", f.t_local_rz);
    get_optional(*it, "t_global_ry", f.t_global_ry);
    get_optional(*it, "t_transfer", f.t_transfer);
    get_optional(*it, "shuttle_speed", f.shuttle_speed);
    get_optional(*it, "t_eff", f.t_eff);
  }
  arch.validate();
  return arch;
}

auto circuit_from_json(const json& j) -> Circuit {
  Circuit c;
  get_optional(j, "name", c.name);
  c.num_qubits = get_as<int>(j, "num_qubits");
  const auto& gates = get_field(j, "cz_gates");
  if (!gates.is_array()) {
    throw FormatError("field 'cz_gates' must be an array");
  }
  for (const auto& g : gates) {
    if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() ||
        !g[1].is_number_integer()) {
      throw FormatError("each CZ gate must be a pair of integers");
    }
    c.cz_gates.emplace_back(g[0].get<int>(), g[1].get<int>());
  }
  std::vector<int> hs;
  get_optional(j, "hadamard_qubits", hs);
  c.hadamard_qubits.insert(hs.begin(), hs.end());
  get_optional(j, "init_plus", c.init_plus);
  c.validate();
  return c;
}

auto schedule_from_json(const json& j) -> Schedule {
  Schedule s;
  const auto& stages = get_field(j, "stages");
  if (!stages.is_array()) {
    throw FormatError("field 'stages' must be an array");
  }
  for (const auto& sj : stages) {
    Stage st;
    const auto kind = get_as<std::string>(sj, "kind");
    if (kind == "execution") {
      st.kind = StageKind::Execution;
    } else if (kind == "transfer") {
      st.kind = StageKind::Transfer;
    } else {
      throw FormatError("unknown stage kind '" + kind + "'");
    }
    const auto& placements = get_field(sj, "placements");
    if (!placements.is_array()) {
      throw FormatError("field 'placements' must be an array");
    }
    for (const auto& pj : placements) {
      QubitPlacement p;
      p.x = get_as<int>(pj, "x");
      p.y = get_as<int>(pj, "y");
      p.h = get_as<int>(pj, "h");
      p.v = get_as<int>(pj, "v");
      p.in_aod = get_as<bool>(pj, "aod");
      get_optional(pj, "c", p.col);
      get_optional(pj, "r", p.row);
      st.placements.push_back(p);
    }
    std::vector<int> gates;
    get_optional(sj, "executed_gates", gates);
    st.executed_gates.insert(gates.begin(), gates.end());
    st.store_cols = flags_from_json(sj, "store_cols");
    st.store_rows = flags_from_json(sj, "store_rows");
    st.load_cols = flags_from_json(sj, "load_cols");
    st.load_rows = flags_from_json(sj, "load_rows");
    s.stages.push_back(std::move(st));
  }
  return s;
}

auto load_architecture(std::string_view json_text) -> Architecture {
  return architecture_from_json(parse_text(json_text));
}

auto load_circuit(std::string_view json_text) -> Circuit {
  return circuit_from_json(parse_text(json_text));
}

auto load_schedule(std::string_view json_text) -> Schedule {
  return schedule_from_json(parse_text(json_text));
}

auto read_text_file(const std::string& path) -> std::string {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw FormatError("cannot write '" + path + "'");
  }
  out << text;
}

auto zoned_architecture(int e_min, int e_max) -> Architecture {
  Architecture a;
  a.x_max = 7;
  a.y_max = 6;
  a.h_max = 2;
  a.v_max = 2;
  a.c_max = 5;
  a.r_max = 5;
  a.e_min = e_min;
  a.e_max = e_max;
  a.interaction_radius = 2;
  a.validate();
  return a;
}

auto no_shielding_architecture() -> Architecture {
  return zoned_architecture(0, 6);
}
auto bottom_storage_architecture() -> Architecture {
  return zoned_architecture(2, 6);
}
auto double_sided_storage_architecture() -> Architecture {
  return zoned_architecture(2, 4);
}

auto to_string(ZoneKind kind) -> std::string_view {
  return kind == ZoneKind::Entangling ? "entangling" : "storage";
}

auto to_string(StageKind kind) -> std::string_view {
  return kind == StageKind::Execution ? "execution" : "transfer";
}

} // namespace zoneprep
