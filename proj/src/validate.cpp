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

// Checks schedules against the architecture rules directly, working only
// with placements and stage data. Nothing here looks at solver variables.

#include "zoneprep/validate.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace zoneprep {
namespace {

using nlohmann::json;

auto flag(const std::vector<bool>& flags, int k) -> bool {
  return k >= 0 && static_cast<std::size_t>(k) < flags.size() &&
         flags[static_cast<std::size_t>(k)];
}

auto all_flagged(const std::vector<bool>& flags, int count) -> bool {
  for (int k = 0; k < count; ++k) {
    if (!flag(flags, k)) {
      return false;
    }
  }
  return true;
}

/// Left of in (major, minor) order.
auto before(int major_a, int minor_a, int major_b, int minor_b) -> bool {
  return major_a < major_b || (major_a == major_b && minor_a < minor_b);
}

auto entangling(const Architecture& arch, int y) -> bool {
  return arch.e_min <= y && y <= arch.e_max;
}

auto describe(const QubitPlacement& p) -> std::string {
  std::ostringstream ss;
  ss << "(x=" << p.x << ", y=" << p.y << ", h=" << p.h << ", v=" << p.v;
  if (p.in_aod) {
    ss << ", c=" << p.col << ", r=" << p.row;
  } else {
    ss << ", slm";
  }
  ss << ')';
  return ss.str();
}

class Checker {
public:
  Checker(const Architecture& arch, const Circuit& circuit, LayoutMode layout,
          const Schedule& schedule)
      : arch_(arch), circuit_(circuit), layout_(layout), schedule_(schedule) {}

  auto run() -> ValidationReport {
    check_shape();
    for (int t = 0; t < schedule_.num_stages(); ++t) {
      check_stage(t);
    }
    check_cover();
    for (int t = 0; t + 1 < schedule_.num_stages(); ++t) {
      if (stage(t).kind == StageKind::Execution) {
        check_execution_transition(t);
      } else {
        check_transfer_transition(t);
      }
    }
    report_.ok = report_.violations.empty();
    return std::move(report_);
  }

  void add_config_violations(const std::vector<QubitPlacement>& cfg, int t) {
    check_bounds(cfg, t);
    check_occupancy(cfg, t);
    check_aod_order(cfg, t);
  }

  auto take() -> ValidationReport { return std::move(report_); }

private:
  auto stage(int t) const -> const Stage& {
    return schedule_.stages[static_cast<std::size_t>(t)];
  }
  auto at(int t, int q) const -> const QubitPlacement& {
    return stage(t).placements[static_cast<std::size_t>(q)];
  }

  void fail(std::string_view rule, int t, std::vector<int> qubits,
            std::vector<int> lines, std::string message) {
    report_.violations.push_back({std::string(rule), t, std::move(qubits),
                                  std::move(lines), std::move(message)});
  }

  void check_shape() const {
    for (const auto& s : schedule_.stages) {
      if (static_cast<int>(s.placements.size()) != circuit_.num_qubits) {
        throw InvariantError("stage has " +
                             std::to_string(s.placements.size()) +
                             " placements for " +
                             std::to_string(circuit_.num_qubits) + " qubits");
      }
      const auto too_long = [](const std::vector<bool>& f, int lines) {
        return static_cast<int>(f.size()) > lines;
      };
      if (too_long(s.store_cols, arch_.num_columns()) ||
          too_long(s.load_cols, arch_.num_columns()) ||
          too_long(s.store_rows, arch_.num_rows()) ||
          too_long(s.load_rows, arch_.num_rows())) {
        throw InvariantError("more transfer flags than AOD lines");
      }
    }
  }

  void check_stage(int t) {
    add_config_violations(stage(t).placements, t);
    check_gates(t);
    if (stage(t).kind == StageKind::Execution) {
      check_idle(t);
    }
  }

  void check_bounds(const std::vector<QubitPlacement>& cfg, int t) {
    for (int q = 0; q < static_cast<int>(cfg.size()); ++q) {
      const auto& p = cfg[static_cast<std::size_t>(q)];
      const bool inside = p.x >= 0 && p.x <= arch_.x_max && p.y >= 0 &&
                          p.y <= arch_.y_max && std::abs(p.h) <= arch_.h_max &&
                          std::abs(p.v) <= arch_.v_max;
      const bool lines_ok = !p.in_aod || (p.col >= 0 && p.col <= arch_.c_max &&
                                          p.row >= 0 && p.row <= arch_.r_max);
      if (!inside || !lines_ok) {
        fail(rule::kBounds, t, {q}, {},
             "placement " + describe(p) + " outside the architecture");
      }
      if (!p.in_aod && (p.h != 0 || p.v != 0)) {
        fail(rule::kSlmCenter, t, {q}, {},
             "SLM qubit off the site centre " + describe(p));
      }
    }
  }

  void check_occupancy(const std::vector<QubitPlacement>& cfg, int t) {
    const int n = static_cast<int>(cfg.size());
    for (int q = 0; q < n; ++q) {
      for (int p = q + 1; p < n; ++p) {
        const auto& a = cfg[static_cast<std::size_t>(q)];
        const auto& b = cfg[static_cast<std::size_t>(p)];
        if (a.x == b.x && a.y == b.y && a.h == b.h && a.v == b.v) {
          fail(rule::kTrapOccupancy, t, {q, p}, {},
               "two qubits in trap " + describe(a));
        }
      }
    }
  }

  void check_aod_order(const std::vector<QubitPlacement>& cfg, int t) {
    const int n = static_cast<int>(cfg.size());
    for (int q = 0; q < n; ++q) {
      for (int p = q + 1; p < n; ++p) {
        const auto& a = cfg[static_cast<std::size_t>(q)];
        const auto& b = cfg[static_cast<std::size_t>(p)];
        if (!a.in_aod || !b.in_aod) {
          continue;
        }
        const bool cols_ok = (a.col < b.col) == before(a.x, a.h, b.x, b.h) &&
                             (b.col < a.col) == before(b.x, b.h, a.x, a.h);
        if (!cols_ok) {
          fail(rule::kColumnOrder, t, {q, p}, {a.col, b.col},
               "AOD columns out of order for " + describe(a) + " and " +
                   describe(b));
        }
        const bool rows_ok = (a.row < b.row) == before(a.y, a.v, b.y, b.v) &&
                             (b.row < a.row) == before(b.y, b.v, a.y, a.v);
        if (!rows_ok) {
          fail(rule::kRowOrder, t, {q, p}, {a.row, b.row},
               "AOD rows out of order for " + describe(a) + " and " +
                   describe(b));
        }
      }
    }
  }

  void check_gates(int t) {
    const auto& s = stage(t);
    const int num_gates = circuit_.num_gates();
    std::vector<int> busy(static_cast<std::size_t>(circuit_.num_qubits), 0);
    for (const int gi : s.executed_gates) {
      if (gi < 1 || gi > num_gates) {
        fail(rule::kGateCover, t, {}, {gi},
             "gate " + std::to_string(gi) + " does not exist");
        continue;
      }
      const auto [q, p] = circuit_.cz_gates[static_cast<std::size_t>(gi - 1)];
      const auto& a = at(t, q);
      const auto& b = at(t, p);
      std::vector<std::string> problems;
      if (s.kind != StageKind::Execution) {
        problems.emplace_back("stage has no Rydberg beam");
      }
      if (a.x != b.x || a.y != b.y) {
        problems.emplace_back("operands at different sites");
      }
      if (std::abs(a.h - b.h) >= arch_.interaction_radius ||
          std::abs(a.v - b.v) >= arch_.interaction_radius) {
        problems.emplace_back("operands beyond the interaction radius");
      }
      if (!entangling(arch_, a.y) || !entangling(arch_, b.y)) {
        problems.emplace_back("operand outside the entangling zone");
      }
      if (!problems.empty()) {
        std::string msg = "gate " + std::to_string(gi) + ":";
        for (const auto& pr : problems) {
          msg += " " + pr + ";";
        }
        msg.pop_back();
        fail(rule::kGateExecution, t, {q, p}, {gi}, msg);
      }
      for (const int x : {q, p}) {
        if (++busy[static_cast<std::size_t>(x)] > 1) {
          fail(rule::kGateExclusivity, t, {x}, {gi},
               "qubit " + std::to_string(x) + " in two gates of one stage");
        }
      }
    }
  }

  auto busy_at(int t) const -> std::vector<bool> {
    std::vector<bool> busy(static_cast<std::size_t>(circuit_.num_qubits),
                           false);
    for (const int gi : stage(t).executed_gates) {
      if (gi >= 1 && gi <= circuit_.num_gates()) {
        const auto [q, p] =
            circuit_.cz_gates[static_cast<std::size_t>(gi - 1)];
        busy[static_cast<std::size_t>(q)] = true;
        busy[static_cast<std::size_t>(p)] = true;
      }
    }
    return busy;
  }

  void check_idle(int t) {
    const auto busy = busy_at(t);
    const int n = circuit_.num_qubits;
    for (int q = 0; q < n; ++q) {
      if (busy[static_cast<std::size_t>(q)]) {
        continue;
      }
      const auto& a = at(t, q);
      if (layout_ == LayoutMode::Shielded) {
        if (entangling(arch_, a.y)) {
          fail(rule::kShielding, t, {q}, {},
               "idle qubit " + std::to_string(q) +
                   " exposed to the Rydberg beam at row " +
                   std::to_string(a.y));
        }
        continue;
      }
      for (int p = 0; p < n; ++p) {
        const auto& b = at(t, p);
        if (p != q && a.x == b.x && a.y == b.y) {
          fail(rule::kIdleSeparation, t, {q, p}, {},
               "idle qubit " + std::to_string(q) + " shares site (" +
                   std::to_string(a.x) + ", " + std::to_string(a.y) + ")");
        }
      }
    }
  }

  void check_cover() {
    for (int t = 0; t < schedule_.num_stages(); ++t) {
      for (const int gi : stage(t).executed_gates) {
        if (gi < 1 || gi > circuit_.num_gates()) {
          continue;
        }
        const auto [it, fresh] = report_.executed_gate_cover.emplace(gi, t);
        if (!fresh) {
          fail(rule::kGateCover, t, {}, {gi},
               "gate " + std::to_string(gi) + " executed again (first in stage " +
                   std::to_string(it->second) + ")");
        }
      }
    }
    for (int gi = 1; gi <= circuit_.num_gates(); ++gi) {
      if (!report_.executed_gate_cover.contains(gi)) {
        fail(rule::kGateCover, -1, {}, {gi},
             "gate " + std::to_string(gi) + " never executed");
      }
    }
  }

  void check_execution_transition(int t) {
    for (int q = 0; q < circuit_.num_qubits; ++q) {
      const auto& a = at(t, q);
      const auto& b = at(t + 1, q);
      if (a.in_aod != b.in_aod) {
        fail(rule::kExecTrapType, t, {q}, {},
             "trap type changes during shuttling");
        continue;
      }
      if (!a.in_aod && (a.x != b.x || a.y != b.y)) {
        fail(rule::kExecSlmFixed, t, {q}, {}, "SLM qubit moves");
      }
      if (a.in_aod && (a.col != b.col || a.row != b.row)) {
        fail(rule::kExecAodLines, t, {q}, {a.col, a.row},
             "AOD qubit changes its column or row");
      }
    }
  }

  void check_transfer_transition(int t) {
    const auto& s = stage(t);
    const int n = circuit_.num_qubits;
    for (int q = 0; q < n; ++q) {
      const auto& a = at(t, q);
      const auto& b = at(t + 1, q);
      if (!b.in_aod && (a.h != 0 || a.v != 0)) {
        fail(rule::kStoreCenter, t, {q}, {},
             "qubit stored away from the site centre " + describe(a));
      }
      if (!b.in_aod && (a.x != b.x || a.y != b.y)) {
        fail(rule::kStorePosition, t, {q}, {},
             "qubit in SLM after the transfer moved");
      }
      if (a.in_aod) {
        const bool on_store_line =
            flag(s.store_cols, a.col) || flag(s.store_rows, a.row);
        if (on_store_line == b.in_aod) {
          fail(rule::kStoreLines, t, {q}, {a.col, a.row},
               on_store_line ? "qubit on a store line stays in the AOD"
                             : "qubit stored without a store line");
        }
      } else if (b.in_aod) {
        if (!flag(s.load_cols, b.col) && !flag(s.load_rows, b.row)) {
          fail(rule::kLoadLines, t, {q}, {b.col, b.row},
               "qubit loaded without a load line");
        }
      } else if (all_flagged(s.load_cols, arch_.num_columns()) ||
                 all_flagged(s.load_rows, arch_.num_rows())) {
        fail(rule::kLoadLines, t, {q}, {},
             "SLM qubit escapes loading although every line is loading");
      }
    }
    for (int q = 0; q < n; ++q) {
      for (int p = q + 1; p < n; ++p) {
        const auto& a0 = at(t, q);
        const auto& b0 = at(t, p);
        const auto& a1 = at(t + 1, q);
        const auto& b1 = at(t + 1, p);
        if (!a1.in_aod || !b1.in_aod) {
          continue;
        }
        const bool cols_ok =
            before(a0.x, a0.h, b0.x, b0.h) == (a1.col < b1.col) &&
            before(b0.x, b0.h, a0.x, a0.h) == (b1.col < a1.col);
        if (!cols_ok) {
          fail(rule::kLoadColumnOrder, t, {q, p}, {a1.col, b1.col},
               "horizontal order not kept by the AOD columns after transfer");
        }
        const bool rows_ok =
            before(a0.y, a0.v, b0.y, b0.v) == (a1.row < b1.row) &&
            before(b0.y, b0.v, a0.y, a0.v) == (b1.row < a1.row);
        if (!rows_ok) {
          fail(rule::kLoadRowOrder, t, {q, p}, {a1.row, b1.row},
               "vertical order not kept by the AOD rows after transfer");
        }
      }
    }
    const auto moved = transfers_between(s, stage(t + 1));
    if (moved.stored.empty() && moved.loaded.empty()) {
      report_.warnings.push_back({"empty-transfer", t, {}, {},
                                  "transfer stage transfers no qubit"});
    }
  }

  const Architecture& arch_;
  const Circuit& circuit_;
  LayoutMode layout_;
  const Schedule& schedule_;
  ValidationReport report_;
};

} // namespace

auto ValidationReport::count(const std::string& rule) const -> int {
  return static_cast<int>(
      std::count_if(violations.begin(), violations.end(),
                    [&](const Violation& v) { return v.rule == rule; }));
}

auto to_json(const Violation& v) -> json {
  return json{{"rule", v.rule},
              {"stage", v.stage},
              {"qubits", v.qubits},
              {"lines", v.lines},
              {"message", v.message}};
}

auto to_json(const ValidationReport& report) -> json {
  json out;
  out["ok"] = report.ok;
  out["violations"] = json::array();
  for (const auto& v : report.violations) {
    out["violations"].push_back(to_json(v));
  }
  out["warnings"] = json::array();
  for (const auto& v : report.warnings) {
    out["warnings"].push_back(to_json(v));
  }
  json cover = json::object();
  for (const auto& [gate, stage] : report.executed_gate_cover) {
    cover[std::to_string(gate)] = stage;
  }
  out["executed_gate_cover"] = cover;
  return out;
}

auto check_schedule(const Architecture& arch, const Circuit& circuit,
                    LayoutMode layout, const Schedule& schedule)
    -> ValidationReport {
  arch.validate();
  circuit.validate();
  return Checker(arch, circuit, layout, schedule).run();
}

auto check_configuration(const Architecture& arch,
                         const std::vector<QubitPlacement>& cfg)
    -> std::vector<Violation> {
  const Circuit none;
  const Schedule empty;
  Checker checker(arch, none, LayoutMode::Shielded, empty);
  checker.add_config_violations(cfg, 0);
  return checker.take().violations;
}

auto transfers_between(const Stage& from, const Stage& to) -> TransferSets {
  TransferSets out;
  const auto n = std::min(from.placements.size(), to.placements.size());
  for (std::size_t q = 0; q < n; ++q) {
    const bool a = from.placements[q].in_aod;
    const bool b = to.placements[q].in_aod;
    if (a && !b) {
      out.stored.push_back(static_cast<int>(q));
    } else if (!a && b) {
      out.loaded.push_back(static_cast<int>(q));
    }
  }
  return out;
}

} // namespace zoneprep
