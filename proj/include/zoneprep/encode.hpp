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
#include "zoneprep/smt.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zoneprep {

enum class VarRole : std::uint8_t {
  X,
  Y,
  H,
  V,
  InAod,
  Col,
  Row,
  Gate,
  Rydberg,
  LoadCol,
  StoreCol,
  LoadRow,
  StoreRow,
};

/// Identifies one solver variable. index is the qubit, the 1-based gate
/// number or the AOD line; stage is -1 for gate variables.
struct VarKey {
  VarRole role = VarRole::X;
  int index = 0;
  int stage = 0;

  auto operator<=>(const VarKey&) const = default;
};

[[nodiscard]] auto var_name(const VarKey& key) -> std::string;
[[nodiscard]] auto parse_var_name(std::string_view name) -> std::optional<VarKey>;

struct Declaration {
  VarKey key;
  std::string name;
  smt::Sort sort = smt::Sort::Int;
};

/// One formula plus the rule family it belongs to.
struct Assertion {
  std::string family;
  smt::Term formula;
};

/**
 * @brief The symbolic scheduling problem for a fixed number of stages.
 * @details Placement variables of stage t describe the configuration at
 * the start of that stage; the transition of stage t links it to t + 1.
 */
struct SmtInstance {
  int s = 0;
  LayoutMode layout = LayoutMode::Shielded;
  Architecture arch;
  Circuit circuit;
  std::vector<Declaration> declarations;
  std::vector<Assertion> assertions;

  /// Term for a declared variable; throws std::out_of_range otherwise.
  [[nodiscard]] auto var(VarRole role, int index, int stage) const
      -> smt::Term;
  [[nodiscard]] auto gate(int i) const -> smt::Term {
    return var(VarRole::Gate, i, -1);
  }
  [[nodiscard]] auto has_var(const VarKey& key) const -> bool;
  [[nodiscard]] auto assertions_in(std::string_view family) const
      -> std::vector<smt::Term>;

  void declare(VarRole role, int index, int stage, smt::Sort sort);
  void add(std::string_view family, smt::Term formula);

private:
  std::map<VarKey, std::size_t> lookup_;
};

/// Declares every variable and asserts the domain bounds.
[[nodiscard]] auto emit_variables(const Architecture& arch,
                                  const Circuit& circuit, int s,
                                  LayoutMode layout = LayoutMode::Shielded)
    -> SmtInstance;

void assert_placement(SmtInstance& inst);
void assert_aod_order(SmtInstance& inst);
void assert_gates(SmtInstance& inst);
void assert_shielding(SmtInstance& inst);
void assert_execution_transition(SmtInstance& inst);
void assert_transfer_transition(SmtInstance& inst);

/// Variables followed by every constraint family, in a fixed order.
[[nodiscard]] auto build_instance(const Architecture& arch,
                                  const Circuit& circuit, int s,
                                  LayoutMode layout) -> SmtInstance;

/// Integer weights of the transfer cost, scaled so that they track the
/// logarithmic ASP penalty of a transferred qubit and of a transfer phase.
struct TransferWeights {
  int per_qubit = 10;
  int per_phase = 14;
};

[[nodiscard]] auto transfer_weights(const Architecture& arch,
                                    const Circuit& circuit) -> TransferWeights;

/**
 * Weighted count of qubit transfers and non-empty store/load phases over
 * all transfer stages. Used to pick a good schedule among those with the
 * minimal stage count.
 */
[[nodiscard]] auto transfer_cost(const SmtInstance& inst,
                                 const TransferWeights& w) -> smt::Term;

/**
 * Adds assertions fixing the instance to a given schedule. AOD line indices
 * of qubits outside the AOD are left free, as are the transfer flags of
 * execution stages and of the last stage.
 */
void pin_schedule(SmtInstance& inst, const Schedule& schedule);

/**
 * A total assignment realising the schedule, with free variables chosen so
 * that they never cause a violation on their own. Evaluating the instance
 * under it checks the schedule against the encoding without a solver.
 */
[[nodiscard]] auto assignment_from_schedule(const SmtInstance& inst,
                                            const Schedule& schedule)
    -> smt::Assignment;

/// Families of the assertions that evaluate to false, one entry per failure.
[[nodiscard]] auto failed_families(const SmtInstance& inst,
                                   const smt::Assignment& env)
    -> std::vector<std::string>;

} // namespace zoneprep
