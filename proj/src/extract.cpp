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

#include "zoneprep/encode.hpp"
#include "zoneprep/validate.hpp"

namespace zoneprep {

auto extract_schedule(const SmtInstance& inst,
                      const std::unordered_map<std::string, std::int64_t>& model)
    -> Schedule {
  const auto value = [&](VarRole role, int index, int stage) -> int {
    const auto name = var_name({role, index, stage});
    const auto it = model.find(name);
    if (it == model.end()) {
      throw FormatError("model has no value for " + name);
    }
    return static_cast<int>(it->second);
  };
  const auto flags = [&](VarRole role, int count, int stage) {
    std::vector<bool> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
      out[static_cast<std::size_t>(k)] = value(role, k, stage) != 0;
    }
    return out;
  };

  Schedule schedule;
  schedule.stages.resize(static_cast<std::size_t>(inst.s));
  for (int t = 0; t < inst.s; ++t) {
    auto& stage = schedule.stages[static_cast<std::size_t>(t)];
    stage.kind = value(VarRole::Rydberg, 0, t) != 0 ? StageKind::Execution
                                                    : StageKind::Transfer;
    for (int q = 0; q < inst.circuit.num_qubits; ++q) {
      QubitPlacement p;
      p.x = value(VarRole::X, q, t);
      p.y = value(VarRole::Y, q, t);
      p.h = value(VarRole::H, q, t);
      p.v = value(VarRole::V, q, t);
      p.in_aod = value(VarRole::InAod, q, t) != 0;
      if (p.in_aod) {
        p.col = value(VarRole::Col, q, t);
        p.row = value(VarRole::Row, q, t);
      }
      stage.placements.push_back(p);
    }
    // Flags of execution stages constrain nothing and are dropped.
    if (stage.kind == StageKind::Transfer) {
      stage.store_cols = flags(VarRole::StoreCol, inst.arch.num_columns(), t);
      stage.load_cols = flags(VarRole::LoadCol, inst.arch.num_columns(), t);
      stage.store_rows = flags(VarRole::StoreRow, inst.arch.num_rows(), t);
      stage.load_rows = flags(VarRole::LoadRow, inst.arch.num_rows(), t);
    }
  }
  for (int i = 1; i <= inst.circuit.num_gates(); ++i) {
    const int t = value(VarRole::Gate, i, -1);
    if (t < 0 || t >= inst.s) {
      throw FormatError("gate " + std::to_string(i) + " assigned to stage " +
                        std::to_string(t));
    }
    schedule.stages[static_cast<std::size_t>(t)].executed_gates.insert(i);
  }
  return schedule;
}

} // namespace zoneprep
