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

#include "zoneprep/fidelity.hpp"

#include <algorithm>
#include <cmath>

namespace zoneprep {
namespace {

auto stage_at(const Schedule& s, int t) -> const Stage& {
  return s.stages[static_cast<std::size_t>(t)];
}

} // namespace

auto stage_timeline(const Architecture& arch, const Schedule& schedule)
    -> std::vector<StageTiming> {
  const auto& fom = arch.fom;
  std::vector<StageTiming> out;
  for (int t = 0; t < schedule.num_stages(); ++t) {
    const auto& cur = stage_at(schedule, t);
    StageTiming timing;
    timing.kind = cur.kind;
    if (t + 1 < schedule.num_stages()) {
      const auto& next = stage_at(schedule, t + 1);
      const auto n = std::min(cur.placements.size(), next.placements.size());
      bool stored = false;
      bool loaded = false;
      for (std::size_t q = 0; q < n; ++q) {
        const auto& a = cur.placements[q];
        const auto& b = next.placements[q];
        timing.shuttle_um =
            std::max(timing.shuttle_um,
                     distance_um(position_um(arch, a), position_um(arch, b)));
        stored = stored || (a.in_aod && !b.in_aod);
        loaded = loaded || (!a.in_aod && b.in_aod);
      }
      if (cur.kind == StageKind::Transfer) {
        timing.transfer_phases = (stored ? 1 : 0) + (loaded ? 1 : 0);
      }
    }
    timing.duration_us = timing.shuttle_um * fom.shuttle_speed;
    if (cur.kind == StageKind::Execution) {
      timing.duration_us += fom.t_cz;
    } else {
      timing.duration_us += fom.t_transfer * timing.transfer_phases;
    }
    out.push_back(timing);
  }
  return out;
}

auto estimate_asp(const Architecture& arch, const Circuit& circuit,
                  const Schedule& schedule) -> FidelityReport {
  const auto& fom = arch.fom;
  const int n = circuit.num_qubits;
  FidelityReport report;
  report.per_stage = stage_timeline(arch, schedule);
  std::vector<double> busy(static_cast<std::size_t>(n), 0.0);

  if (circuit.init_plus && n > 0) {
    report.prologue_us = fom.t_global_ry;
    report.factors.global_ry += n;
    for (auto& b : busy) {
      b += fom.t_global_ry;
    }
  }
  if (!circuit.hadamard_qubits.empty()) {
    report.epilogue_us = fom.t_local_rz + fom.t_global_ry;
    const int h = static_cast<int>(circuit.hadamard_qubits.size());
    report.factors.local_rz += h;
    report.factors.global_ry += h;
    for (const int q : circuit.hadamard_qubits) {
      busy[static_cast<std::size_t>(q)] += fom.t_local_rz + fom.t_global_ry;
    }
  }

  for (int t = 0; t < schedule.num_stages(); ++t) {
    const auto& cur = stage_at(schedule, t);
    if (cur.kind == StageKind::Execution) {
      std::vector<bool> active(static_cast<std::size_t>(n), false);
      for (const int gi : cur.executed_gates) {
        const auto [a, b] = circuit.cz_gates[static_cast<std::size_t>(gi - 1)];
        active[static_cast<std::size_t>(a)] = true;
        active[static_cast<std::size_t>(b)] = true;
        ++report.factors.cz;
      }
      for (int q = 0; q < n; ++q) {
        if (active[static_cast<std::size_t>(q)]) {
          busy[static_cast<std::size_t>(q)] += fom.t_cz;
        } else if (zone_of(arch, cur.placements[static_cast<std::size_t>(q)]
                                     .y) == ZoneKind::Entangling) {
          ++report.factors.id_ryd;
        }
      }
      continue;
    }
    if (t + 1 >= schedule.num_stages()) {
      continue;
    }
    const auto& next = stage_at(schedule, t + 1);
    for (int q = 0; q < n; ++q) {
      const bool a = cur.placements[static_cast<std::size_t>(q)].in_aod;
      const bool b = next.placements[static_cast<std::size_t>(q)].in_aod;
      if (a != b) {
        ++report.factors.transfer;
        busy[static_cast<std::size_t>(q)] += fom.t_transfer;
      }
    }
  }

  report.total_time_us = report.prologue_us + report.epilogue_us;
  for (const auto& s : report.per_stage) {
    report.total_time_us += s.duration_us;
  }
  for (const double b : busy) {
    report.t_idle_us += std::max(0.0, report.total_time_us - b);
  }

  const auto& f = report.factors;
  double log_asp = -report.t_idle_us / fom.t_eff;
  log_asp += f.cz * std::log(fom.f_cz);
  log_asp += f.id_ryd * std::log(fom.f_id_ryd);
  log_asp += f.transfer * std::log(fom.f_transfer);
  log_asp += f.local_rz * std::log(fom.f_local_rz);
  log_asp += f.global_ry * std::log(fom.f_global_ry);
  report.asp = std::exp(log_asp);
  return report;
}

auto to_json(const FidelityReport& report) -> nlohmann::json {
  auto stages = nlohmann::json::array();
  for (const auto& s : report.per_stage) {
    stages.push_back({{"kind", std::string(to_string(s.kind))},
                      {"shuttle_um", s.shuttle_um},
                      {"transfer_phases", s.transfer_phases},
                      {"duration_us", s.duration_us}});
  }
  const auto& f = report.factors;
  return {{"per_stage", stages},
          {"prologue_us", report.prologue_us},
          {"epilogue_us", report.epilogue_us},
          {"total_time_us", report.total_time_us},
          {"t_idle_us", report.t_idle_us},
          {"factors",
           {{"cz", f.cz},
            {"id_ryd", f.id_ryd},
            {"transfer", f.transfer},
            {"local_rz", f.local_rz},
            {"global_ry", f.global_ry}}},
          {"asp", report.asp}};
}

} // namespace zoneprep
