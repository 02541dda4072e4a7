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

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace zoneprep {
namespace {

using smt::Term;

struct RoleInfo {
  VarRole role;
  std::string_view prefix;
  bool per_stage;
};

constexpr std::array<RoleInfo, 13> kRoles{{
    {VarRole::X, "x", true},
    {VarRole::Y, "y", true},
    {VarRole::H, "h", true},
    {VarRole::V, "v", true},
    {VarRole::InAod, "a", true},
    {VarRole::Col, "c", true},
    {VarRole::Row, "r", true},
    {VarRole::Gate, "g", false},
    {VarRole::Rydberg, "ryd", true},
    {VarRole::LoadCol, "slc", true},
    {VarRole::StoreCol, "stc", true},
    {VarRole::LoadRow, "slr", true},
    {VarRole::StoreRow, "str", true},
}};

auto role_info(VarRole role) -> const RoleInfo& {
  for (const auto& info : kRoles) {
    if (info.role == role) {
      return info;
    }
  }
  throw std::logic_error("unknown variable role");
}

auto parse_int(std::string_view text, int& out) -> bool {
  if (text.empty()) {
    return false;
  }
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end && out >= 0;
}

auto in_entangling_rows(const Architecture& arch, const Term& y) -> Term {
  return smt::land({smt::le(arch.e_min, y), smt::le(y, arch.e_max)});
}

auto abs_below(const Term& diff, int bound) -> Term {
  return smt::land({smt::lt(smt::int_const(-bound), diff), smt::lt(diff, bound)});
}

/// Strictly left of: smaller coordinate, or same coordinate and smaller offset.
auto lex_less(const Term& p, const Term& po, const Term& q, const Term& qo)
    -> Term {
  return smt::lor({smt::lt(p, q), smt::land({smt::eq(p, q), smt::lt(po, qo)})});
}

/// flag[index] for an integer-valued index over a family of line flags.
auto select_flag(const SmtInstance& inst, VarRole flag, const Term& index,
                 int num_lines, int stage) -> Term {
  std::vector<Term> options;
  options.reserve(static_cast<std::size_t>(num_lines));
  for (int k = 0; k < num_lines; ++k) {
    options.push_back(
        smt::land({smt::eq(index, k), inst.var(flag, k, stage)}));
  }
  return smt::lor(std::move(options));
}

auto idle_at(const SmtInstance& inst, int q, int t) -> Term {
  std::vector<Term> parts;
  const auto& gates = inst.circuit.cz_gates;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].first == q || gates[i].second == q) {
      parts.push_back(
          smt::ne(inst.gate(static_cast<int>(i) + 1), smt::int_const(t)));
    }
  }
  return smt::land(std::move(parts));
}

} // namespace

auto var_name(const VarKey& key) -> std::string {
  const auto& info = role_info(key.role);
  std::string name(info.prefix);
  name += '_';
  name += std::to_string(key.index);
  if (info.per_stage) {
    name += '_';
    name += std::to_string(key.stage);
  }
  return name;
}

auto parse_var_name(std::string_view name) -> std::optional<VarKey> {
  const auto first = name.find('_');
  if (first == std::string_view::npos) {
    return std::nullopt;
  }
  const auto prefix = name.substr(0, first);
  for (const auto& info : kRoles) {
    if (info.prefix != prefix) {
      continue;
    }
    const auto rest = name.substr(first + 1);
    VarKey key{info.role, 0, -1};
    if (!info.per_stage) {
      if (!parse_int(rest, key.index)) {
        return std::nullopt;
      }
      return key;
    }
    const auto second = rest.find('_');
    if (second == std::string_view::npos ||
        !parse_int(rest.substr(0, second), key.index) ||
        !parse_int(rest.substr(second + 1), key.stage)) {
      return std::nullopt;
    }
    return key;
  }
  return std::nullopt;
}

auto SmtInstance::var(VarRole role, int index, int stage) const -> Term {
  const VarKey key{role, index, stage};
  const auto it = lookup_.find(key);
  if (it == lookup_.end()) {
    throw std::out_of_range("undeclared variable " + var_name(key));
  }
  const auto& decl = declarations[it->second];
  return decl.sort == smt::Sort::Bool ? smt::bool_var(decl.name)
                                      : smt::int_var(decl.name);
}

auto SmtInstance::has_var(const VarKey& key) const -> bool {
  return lookup_.contains(key);
}

auto SmtInstance::assertions_in(std::string_view family) const
    -> std::vector<Term> {
  std::vector<Term> out;
  for (const auto& a : assertions) {
    if (a.family == family) {
      out.push_back(a.formula);
    }
  }
  return out;
}

void SmtInstance::declare(VarRole role, int index, int stage, smt::Sort sort) {
  const VarKey key{role, index, stage};
  if (lookup_.contains(key)) {
    throw std::logic_error("duplicate variable " + var_name(key));
  }
  lookup_.emplace(key, declarations.size());
  declarations.push_back({key, var_name(key), sort});
}

void SmtInstance::add(std::string_view family, Term formula) {
  assertions.push_back({std::string(family), std::move(formula)});
}

auto emit_variables(const Architecture& arch, const Circuit& circuit, int s,
                    LayoutMode layout) -> SmtInstance {
  if (s < 1) {
    throw InvariantError("stage count must be at least 1");
  }
  arch.validate();
  circuit.validate();

  SmtInstance inst;
  inst.s = s;
  inst.layout = layout;
  inst.arch = arch;
  inst.circuit = circuit;

  const int n = circuit.num_qubits;
  for (int t = 0; t < s; ++t) {
    for (int q = 0; q < n; ++q) {
      inst.declare(VarRole::X, q, t, smt::Sort::Int);
      inst.declare(VarRole::Y, q, t, smt::Sort::Int);
      inst.declare(VarRole::H, q, t, smt::Sort::Int);
      inst.declare(VarRole::V, q, t, smt::Sort::Int);
      inst.declare(VarRole::InAod, q, t, smt::Sort::Bool);
      inst.declare(VarRole::Col, q, t, smt::Sort::Int);
      inst.declare(VarRole::Row, q, t, smt::Sort::Int);
    }
  }
  for (int i = 1; i <= circuit.num_gates(); ++i) {
    inst.declare(VarRole::Gate, i, -1, smt::Sort::Int);
  }
  for (int t = 0; t < s; ++t) {
    inst.declare(VarRole::Rydberg, 0, t, smt::Sort::Bool);
  }
  for (int t = 0; t < s; ++t) {
    for (int k = 0; k < arch.num_columns(); ++k) {
      inst.declare(VarRole::LoadCol, k, t, smt::Sort::Bool);
      inst.declare(VarRole::StoreCol, k, t, smt::Sort::Bool);
    }
    for (int k = 0; k < arch.num_rows(); ++k) {
      inst.declare(VarRole::LoadRow, k, t, smt::Sort::Bool);
      inst.declare(VarRole::StoreRow, k, t, smt::Sort::Bool);
    }
  }

  const auto range = [&](const Term& v, int lo, int hi) {
    inst.add(rule::kBounds, smt::land({smt::le(lo, v), smt::le(v, hi)}));
  };
  for (int t = 0; t < s; ++t) {
    for (int q = 0; q < n; ++q) {
      range(inst.var(VarRole::X, q, t), 0, arch.x_max);
      range(inst.var(VarRole::Y, q, t), 0, arch.y_max);
      range(inst.var(VarRole::H, q, t), -arch.h_max, arch.h_max);
      range(inst.var(VarRole::V, q, t), -arch.v_max, arch.v_max);
      range(inst.var(VarRole::Col, q, t), 0, arch.c_max);
      range(inst.var(VarRole::Row, q, t), 0, arch.r_max);
    }
  }
  for (int i = 1; i <= circuit.num_gates(); ++i) {
    range(inst.gate(i), 0, s - 1);
  }
  return inst;
}

void assert_placement(SmtInstance& inst) {
  const int n = inst.circuit.num_qubits;
  for (int t = 0; t < inst.s; ++t) {
    for (int q = 0; q < n; ++q) {
      for (int p = q + 1; p < n; ++p) {
        const auto same_offset = smt::land(
            {smt::eq(inst.var(VarRole::H, q, t), inst.var(VarRole::H, p, t)),
             smt::eq(inst.var(VarRole::V, q, t), inst.var(VarRole::V, p, t))});
        const auto other_site = smt::lor(
            {smt::ne(inst.var(VarRole::X, q, t), inst.var(VarRole::X, p, t)),
             smt::ne(inst.var(VarRole::Y, q, t), inst.var(VarRole::Y, p, t))});
        inst.add(rule::kTrapOccupancy, smt::implies(same_offset, other_site));
      }
    }
    for (int q = 0; q < n; ++q) {
      inst.add(rule::kSlmCenter,
               smt::implies(smt::lnot(inst.var(VarRole::InAod, q, t)),
                            smt::land({smt::eq(inst.var(VarRole::H, q, t), 0),
                                       smt::eq(inst.var(VarRole::V, q, t), 0)})));
    }
  }
}

void assert_aod_order(SmtInstance& inst) {
  const int n = inst.circuit.num_qubits;
  for (int t = 0; t < inst.s; ++t) {
    for (int q = 0; q < n; ++q) {
      for (int p = 0; p < n; ++p) {
        if (p == q) {
          continue;
        }
        const auto both = smt::land({inst.var(VarRole::InAod, q, t),
                                     inst.var(VarRole::InAod, p, t)});
        inst.add(rule::kColumnOrder,
                 smt::implies(
                     both, smt::iff(smt::lt(inst.var(VarRole::Col, q, t),
                                            inst.var(VarRole::Col, p, t)),
                                    lex_less(inst.var(VarRole::X, q, t),
                                             inst.var(VarRole::H, q, t),
                                             inst.var(VarRole::X, p, t),
                                             inst.var(VarRole::H, p, t)))));
        inst.add(rule::kRowOrder,
                 smt::implies(
                     both, smt::iff(smt::lt(inst.var(VarRole::Row, q, t),
                                            inst.var(VarRole::Row, p, t)),
                                    lex_less(inst.var(VarRole::Y, q, t),
                                             inst.var(VarRole::V, q, t),
                                             inst.var(VarRole::Y, p, t),
                                             inst.var(VarRole::V, p, t)))));
      }
    }
  }
}

void assert_gates(SmtInstance& inst) {
  const auto& arch = inst.arch;
  const auto& gates = inst.circuit.cz_gates;
  const int radius = arch.interaction_radius;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const int gi = static_cast<int>(i) + 1;
    const auto [q, p] = gates[i];
    for (int t = 0; t < inst.s; ++t) {
      const auto yq = inst.var(VarRole::Y, q, t);
      const auto yp = inst.var(VarRole::Y, p, t);
      inst.add(
          rule::kGateExecution,
          smt::implies(
              smt::eq(inst.gate(gi), t),
              smt::land(
                  {inst.var(VarRole::Rydberg, 0, t),
                   smt::eq(inst.var(VarRole::X, q, t),
                           inst.var(VarRole::X, p, t)),
                   smt::eq(yq, yp),
                   abs_below(smt::sub(inst.var(VarRole::H, p, t),
                                      inst.var(VarRole::H, q, t)),
                             radius),
                   abs_below(smt::sub(inst.var(VarRole::V, p, t),
                                      inst.var(VarRole::V, q, t)),
                             radius),
                   in_entangling_rows(arch, yq),
                   in_entangling_rows(arch, yp)})));
    }
  }
  for (std::size_t i = 0; i < gates.size(); ++i) {
    for (std::size_t j = i + 1; j < gates.size(); ++j) {
      const auto [a, b] = gates[i];
      const auto [c, d] = gates[j];
      if (a == c || a == d || b == c || b == d) {
        inst.add(rule::kGateExclusivity,
                 smt::ne(inst.gate(static_cast<int>(i) + 1),
                         inst.gate(static_cast<int>(j) + 1)));
      }
    }
  }
}

void assert_shielding(SmtInstance& inst) {
  const int n = inst.circuit.num_qubits;
  for (int t = 0; t < inst.s; ++t) {
    const auto ryd = inst.var(VarRole::Rydberg, 0, t);
    for (int q = 0; q < n; ++q) {
      const auto idle = idle_at(inst, q, t);
      if (inst.layout == LayoutMode::Shielded) {
        inst.add(rule::kShielding,
                 smt::implies(ryd, smt::lnot(smt::land(
                                       {idle, in_entangling_rows(
                                                  inst.arch,
                                                  inst.var(VarRole::Y, q, t))}))));
        continue;
      }
      std::vector<Term> alone;
      for (int p = 0; p < n; ++p) {
        if (p == q) {
          continue;
        }
        alone.push_back(smt::lor(
            {smt::ne(inst.var(VarRole::X, q, t), inst.var(VarRole::X, p, t)),
             smt::ne(inst.var(VarRole::Y, q, t), inst.var(VarRole::Y, p, t))}));
      }
      inst.add(rule::kIdleSeparation,
               smt::implies(smt::land({ryd, idle}),
                            smt::land(std::move(alone))));
    }
  }
}

void assert_execution_transition(SmtInstance& inst) {
  const int n = inst.circuit.num_qubits;
  for (int t = 0; t + 1 < inst.s; ++t) {
    const auto ryd = inst.var(VarRole::Rydberg, 0, t);
    for (int q = 0; q < n; ++q) {
      const auto a0 = inst.var(VarRole::InAod, q, t);
      const auto a1 = inst.var(VarRole::InAod, q, t + 1);
      inst.add(rule::kExecTrapType, smt::implies(ryd, smt::iff(a0, a1)));
      inst.add(rule::kExecSlmFixed,
               smt::implies(
                   ryd, smt::lor({a0, smt::land({smt::eq(
                                                     inst.var(VarRole::X, q, t),
                                                     inst.var(VarRole::X, q, t + 1)),
                                                 smt::eq(
                                                     inst.var(VarRole::Y, q, t),
                                                     inst.var(VarRole::Y, q,
                                                              t + 1))})})));
      inst.add(rule::kExecAodLines,
               smt::implies(
                   ryd, smt::lor({smt::lnot(a0),
                                  smt::land({smt::eq(inst.var(VarRole::Col, q, t),
                                                     inst.var(VarRole::Col, q,
                                                              t + 1)),
                                             smt::eq(inst.var(VarRole::Row, q, t),
                                                     inst.var(VarRole::Row, q,
                                                              t + 1))})})));
    }
  }
}

void assert_transfer_transition(SmtInstance& inst) {
  const int n = inst.circuit.num_qubits;
  const int cols = inst.arch.num_columns();
  const int rows = inst.arch.num_rows();
  for (int t = 0; t + 1 < inst.s; ++t) {
    const auto transfer = smt::lnot(inst.var(VarRole::Rydberg, 0, t));
    for (int q = 0; q < n; ++q) {
      const auto a0 = inst.var(VarRole::InAod, q, t);
      const auto a1 = inst.var(VarRole::InAod, q, t + 1);
      inst.add(rule::kStoreCenter,
               smt::implies(transfer,
                            smt::lor({a1, smt::land({smt::eq(inst.var(
                                                                 VarRole::H, q, t),
                                                             0),
                                                     smt::eq(inst.var(
                                                                 VarRole::V, q, t),
                                                             0)})})));
      inst.add(rule::kStorePosition,
               smt::implies(
                   transfer,
                   smt::lor({a1, smt::land({smt::eq(inst.var(VarRole::X, q, t),
                                                    inst.var(VarRole::X, q, t + 1)),
                                            smt::eq(inst.var(VarRole::Y, q, t),
                                                    inst.var(VarRole::Y, q,
                                                             t + 1))})})));
      const auto stored = smt::lor(
          {select_flag(inst, VarRole::StoreCol, inst.var(VarRole::Col, q, t),
                       cols, t),
           select_flag(inst, VarRole::StoreRow, inst.var(VarRole::Row, q, t),
                       rows, t)});
      inst.add(rule::kStoreLines,
               smt::implies(transfer, smt::lor({smt::lnot(a0),
                                                smt::iff(smt::lnot(a1), stored)})));
    }
    for (int q = 0; q < n; ++q) {
      for (int p = 0; p < n; ++p) {
        if (p == q) {
          continue;
        }
        const auto guard =
            smt::land({transfer, inst.var(VarRole::InAod, q, t + 1),
                       inst.var(VarRole::InAod, p, t + 1)});
        inst.add(rule::kLoadColumnOrder,
                 smt::implies(
                     guard,
                     smt::iff(lex_less(inst.var(VarRole::X, q, t),
                                       inst.var(VarRole::H, q, t),
                                       inst.var(VarRole::X, p, t),
                                       inst.var(VarRole::H, p, t)),
                              smt::lt(inst.var(VarRole::Col, q, t + 1),
                                      inst.var(VarRole::Col, p, t + 1)))));
        inst.add(rule::kLoadRowOrder,
                 smt::implies(
                     guard,
                     smt::iff(lex_less(inst.var(VarRole::Y, q, t),
                                       inst.var(VarRole::V, q, t),
                                       inst.var(VarRole::Y, p, t),
                                       inst.var(VarRole::V, p, t)),
                              smt::lt(inst.var(VarRole::Row, q, t + 1),
                                      inst.var(VarRole::Row, p, t + 1)))));
      }
    }
    for (int q = 0; q < n; ++q) {
      const auto a0 = inst.var(VarRole::InAod, q, t);
      const auto a1 = inst.var(VarRole::InAod, q, t + 1);
      const auto loaded = smt::lor(
          {select_flag(inst, VarRole::LoadCol,
                       inst.var(VarRole::Col, q, t + 1), cols, t),
           select_flag(inst, VarRole::LoadRow,
                       inst.var(VarRole::Row, q, t + 1), rows, t)});
      inst.add(rule::kLoadLines,
               smt::implies(transfer, smt::lor({a0, smt::iff(a1, loaded)})));
    }
  }
}

auto build_instance(const Architecture& arch, const Circuit& circuit, int s,
                    LayoutMode layout) -> SmtInstance {
  auto inst = emit_variables(arch, circuit, s, layout);
  assert_placement(inst);
  assert_aod_order(inst);
  assert_gates(inst);
  assert_shielding(inst);
  assert_execution_transition(inst);
  assert_transfer_transition(inst);
  return inst;
}

auto transfer_weights(const Architecture& arch, const Circuit& circuit)
    -> TransferWeights {
  constexpr double kScale = 10000.0;
  const auto& fom = arch.fom;
  TransferWeights w;
  w.per_qubit = std::max(1, static_cast<int>(std::lround(
                                -std::log(fom.f_transfer) * kScale)));
  w.per_phase = std::max(
      1, static_cast<int>(std::lround(fom.t_transfer * circuit.num_qubits /
                                      fom.t_eff * kScale)));
  return w;
}

auto transfer_cost(const SmtInstance& inst, const TransferWeights& w) -> Term {
  std::vector<Term> terms;
  const auto zero = smt::int_const(0);
  for (int t = 0; t + 1 < inst.s; ++t) {
    const auto transfer = smt::lnot(inst.var(VarRole::Rydberg, 0, t));
    std::vector<Term> stores;
    std::vector<Term> loads;
    for (int q = 0; q < inst.circuit.num_qubits; ++q) {
      const auto a0 = inst.var(VarRole::InAod, q, t);
      const auto a1 = inst.var(VarRole::InAod, q, t + 1);
      stores.push_back(smt::land({transfer, a0, smt::lnot(a1)}));
      loads.push_back(smt::land({transfer, smt::lnot(a0), a1}));
    }
    for (const auto* group : {&stores, &loads}) {
      for (const auto& moved : *group) {
        terms.push_back(smt::ite(moved, smt::int_const(w.per_qubit), zero));
      }
      terms.push_back(
          smt::ite(smt::lor(*group), smt::int_const(w.per_phase), zero));
    }
  }
  return smt::sum(std::move(terms));
}

namespace {

void check_dimensions(const SmtInstance& inst, const Schedule& schedule) {
  if (schedule.num_stages() != inst.s) {
    throw InvariantError("schedule has " +
                         std::to_string(schedule.num_stages()) +
                         " stages, instance has " + std::to_string(inst.s));
  }
  for (const auto& stage : schedule.stages) {
    if (static_cast<int>(stage.placements.size()) !=
        inst.circuit.num_qubits) {
      throw InvariantError("stage placement count differs from qubit count");
    }
  }
}

auto flag_at(const std::vector<bool>& flags, int k) -> bool {
  return k >= 0 && static_cast<std::size_t>(k) < flags.size() &&
         flags[static_cast<std::size_t>(k)];
}

auto first_unflagged(const std::vector<bool>& flags, int count) -> int {
  for (int k = 0; k < count; ++k) {
    if (!flag_at(flags, k)) {
      return k;
    }
  }
  return 0;
}

auto gate_stage(const Schedule& schedule, int gi) -> int {
  for (int t = 0; t < schedule.num_stages(); ++t) {
    if (schedule.stages[static_cast<std::size_t>(t)].executed_gates.contains(
            gi)) {
      return t;
    }
  }
  return -1;
}

/// Whether stage t's transfer flags take part in a transition.
auto flags_live(const SmtInstance& inst, const Schedule& schedule, int t)
    -> bool {
  return t + 1 < inst.s &&
         schedule.stages[static_cast<std::size_t>(t)].kind ==
             StageKind::Transfer;
}

} // namespace

void pin_schedule(SmtInstance& inst, const Schedule& schedule) {
  check_dimensions(inst, schedule);
  for (int t = 0; t < inst.s; ++t) {
    const auto& stage = schedule.stages[static_cast<std::size_t>(t)];
    for (int q = 0; q < inst.circuit.num_qubits; ++q) {
      const auto& p = stage.placements[static_cast<std::size_t>(q)];
      inst.add(rule::kPinned, smt::eq(inst.var(VarRole::X, q, t), p.x));
      inst.add(rule::kPinned, smt::eq(inst.var(VarRole::Y, q, t), p.y));
      inst.add(rule::kPinned, smt::eq(inst.var(VarRole::H, q, t), p.h));
      inst.add(rule::kPinned, smt::eq(inst.var(VarRole::V, q, t), p.v));
      const auto a = inst.var(VarRole::InAod, q, t);
      inst.add(rule::kPinned, p.in_aod ? a : smt::lnot(a));
      if (p.in_aod) {
        inst.add(rule::kPinned, smt::eq(inst.var(VarRole::Col, q, t), p.col));
        inst.add(rule::kPinned, smt::eq(inst.var(VarRole::Row, q, t), p.row));
      }
    }
    const auto ryd = inst.var(VarRole::Rydberg, 0, t);
    inst.add(rule::kPinned,
             stage.kind == StageKind::Execution ? ryd : smt::lnot(ryd));
    if (!flags_live(inst, schedule, t)) {
      continue;
    }
    const auto pin_flags = [&](VarRole role, const std::vector<bool>& flags,
                               int count) {
      for (int k = 0; k < count; ++k) {
        const auto f = inst.var(role, k, t);
        inst.add(rule::kPinned, flag_at(flags, k) ? f : smt::lnot(f));
      }
    };
    pin_flags(VarRole::LoadCol, stage.load_cols, inst.arch.num_columns());
    pin_flags(VarRole::StoreCol, stage.store_cols, inst.arch.num_columns());
    pin_flags(VarRole::LoadRow, stage.load_rows, inst.arch.num_rows());
    pin_flags(VarRole::StoreRow, stage.store_rows, inst.arch.num_rows());
  }
  for (int i = 1; i <= inst.circuit.num_gates(); ++i) {
    inst.add(rule::kPinned, smt::eq(inst.gate(i), gate_stage(schedule, i)));
  }
}

auto assignment_from_schedule(const SmtInstance& inst,
                              const Schedule& schedule) -> smt::Assignment {
  check_dimensions(inst, schedule);
  smt::Assignment env;
  const auto set = [&](VarRole role, int index, int stage, std::int64_t v) {
    env[var_name({role, index, stage})] = v;
  };
  const int cols = inst.arch.num_columns();
  const int rows = inst.arch.num_rows();
  for (int t = 0; t < inst.s; ++t) {
    const auto& stage = schedule.stages[static_cast<std::size_t>(t)];
    const Stage* prev = nullptr;
    if (t > 0 && flags_live(inst, schedule, t - 1)) {
      prev = &schedule.stages[static_cast<std::size_t>(t - 1)];
    }
    for (int q = 0; q < inst.circuit.num_qubits; ++q) {
      const auto& p = stage.placements[static_cast<std::size_t>(q)];
      set(VarRole::X, q, t, p.x);
      set(VarRole::Y, q, t, p.y);
      set(VarRole::H, q, t, p.h);
      set(VarRole::V, q, t, p.v);
      set(VarRole::InAod, q, t, p.in_aod ? 1 : 0);
      int col = p.col;
      int row = p.row;
      if (!p.in_aod) {
        col = prev != nullptr ? first_unflagged(prev->load_cols, cols) : 0;
        row = prev != nullptr ? first_unflagged(prev->load_rows, rows) : 0;
      }
      set(VarRole::Col, q, t, col);
      set(VarRole::Row, q, t, row);
    }
    set(VarRole::Rydberg, 0, t, stage.kind == StageKind::Execution ? 1 : 0);
    const bool live = stage.kind == StageKind::Transfer;
    for (int k = 0; k < cols; ++k) {
      set(VarRole::LoadCol, k, t, live && flag_at(stage.load_cols, k) ? 1 : 0);
      set(VarRole::StoreCol, k, t,
          live && flag_at(stage.store_cols, k) ? 1 : 0);
    }
    for (int k = 0; k < rows; ++k) {
      set(VarRole::LoadRow, k, t, live && flag_at(stage.load_rows, k) ? 1 : 0);
      set(VarRole::StoreRow, k, t,
          live && flag_at(stage.store_rows, k) ? 1 : 0);
    }
  }
  for (int i = 1; i <= inst.circuit.num_gates(); ++i) {
    set(VarRole::Gate, i, -1, gate_stage(schedule, i));
  }
  return env;
}

auto failed_families(const SmtInstance& inst, const smt::Assignment& env)
    -> std::vector<std::string> {
  std::vector<std::string> out;
  for (const auto& a : inst.assertions) {
    if (smt::evaluate(a.formula, env) == 0) {
      out.push_back(a.family);
    }
  }
  return out;
}

} // namespace zoneprep
