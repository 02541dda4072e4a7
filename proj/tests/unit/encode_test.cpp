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

#include "test_support.hpp"
#include "zoneprep/codes.hpp"
#include "zoneprep/validate.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace zoneprep {
namespace {

using testing::aod;
using testing::make_arch;
using testing::make_circuit;
using testing::slm;

auto steane() -> Circuit {
  return preparation_circuit(builtin_code("steane"));
}

void pin(SmtInstance& inst, VarRole role, int index, int stage,
         std::int64_t value) {
  const auto v = inst.var(role, index, stage);
  if (v.sort() == smt::Sort::Bool) {
    inst.add(rule::kPinned, value != 0 ? v : smt::lnot(v));
  } else {
    inst.add(rule::kPinned, smt::eq(v, value));
  }
}

/// Pins every field of a placement at stage t.
void place(SmtInstance& inst, int q, int t, const QubitPlacement& p) {
  pin(inst, VarRole::X, q, t, p.x);
  pin(inst, VarRole::Y, q, t, p.y);
  pin(inst, VarRole::H, q, t, p.h);
  pin(inst, VarRole::V, q, t, p.v);
  pin(inst, VarRole::InAod, q, t, p.in_aod ? 1 : 0);
  if (p.in_aod) {
    pin(inst, VarRole::Col, q, t, p.col);
    pin(inst, VarRole::Row, q, t, p.row);
  }
}

auto verdict(const SmtInstance& inst) -> VerdictKind {
  return testing::solve(inst).kind;
}

auto count_roles(const SmtInstance& inst) -> std::map<VarRole, int> {
  std::map<VarRole, int> out;
  for (const auto& d : inst.declarations) {
    ++out[d.key.role];
  }
  return out;
}

/// Three sites in a row, offsets up to 1, three AOD lines each way.
auto line_arch() -> Architecture {
  return make_arch({2, 0, 1, 1, 2, 2, 0, 0, 2});
}

TEST(Variables, SteaneCounts) {
  const auto inst =
      emit_variables(no_shielding_architecture(), steane(), 3);
  auto roles = count_roles(inst);
  const int placement = roles[VarRole::X] + roles[VarRole::Y] +
                        roles[VarRole::H] + roles[VarRole::V] +
                        roles[VarRole::InAod] + roles[VarRole::Col] +
                        roles[VarRole::Row];
  EXPECT_EQ(placement, 7 * 7 * 3);
  EXPECT_EQ(roles[VarRole::Gate], 9);
  EXPECT_EQ(roles[VarRole::Rydberg], 3);
  EXPECT_EQ(roles[VarRole::LoadCol] + roles[VarRole::StoreCol] +
                roles[VarRole::LoadRow] + roles[VarRole::StoreRow],
            (6 + 6) * 2 * 3);
  EXPECT_EQ(inst.declarations.size(), 147U + 9U + 3U + 72U);
}

TEST(Variables, MinimalInstance) {
  const auto inst = emit_variables(make_arch({}), make_circuit(1, {}), 1);
  auto roles = count_roles(inst);
  EXPECT_EQ(roles[VarRole::X] + roles[VarRole::Y] + roles[VarRole::H] +
                roles[VarRole::V] + roles[VarRole::InAod] +
                roles[VarRole::Col] + roles[VarRole::Row],
            7);
  EXPECT_EQ(roles[VarRole::Rydberg], 1);
  EXPECT_EQ(roles[VarRole::Gate], 0);
}

TEST(Variables, GateStageRange) {
  const auto inst =
      emit_variables(no_shielding_architecture(), steane(), 3);
  smt::Term bound;
  for (const auto& a : inst.assertions_in(rule::kBounds)) {
    std::vector<std::string> names;
    smt::collect_variables(a, names);
    if (names == std::vector<std::string>{"g_1"}) {
      bound = a;
    }
  }
  ASSERT_TRUE(bound.valid());
  const auto holds = [&](int v) {
    return smt::evaluate(bound, {{"g_1", v}}) != 0;
  };
  EXPECT_FALSE(holds(-1));
  EXPECT_TRUE(holds(0));
  EXPECT_TRUE(holds(2));
  EXPECT_FALSE(holds(3));
}

TEST(Variables, NamesRoundTrip) {
  const auto inst =
      emit_variables(bottom_storage_architecture(), steane(), 2);
  for (const auto& d : inst.declarations) {
    const auto key = parse_var_name(d.name);
    ASSERT_TRUE(key.has_value()) << d.name;
    EXPECT_EQ(*key, d.key);
  }
  EXPECT_EQ(var_name({VarRole::Rydberg, 0, 4}), "ryd_0_4");
  EXPECT_EQ(var_name({VarRole::Gate, 3, -1}), "g_3");
  EXPECT_FALSE(parse_var_name("q_1_2").has_value());
  EXPECT_FALSE(parse_var_name("x_1").has_value());
  EXPECT_FALSE(parse_var_name("x_-1_0").has_value());
}

TEST(Variables, RejectsZeroStages) {
  EXPECT_THROW((void)emit_variables(make_arch({}), make_circuit(1, {}), 0),
               InvariantError);
}

TEST(Variables, UnknownVariableThrows) {
  const auto inst = emit_variables(make_arch({}), make_circuit(1, {}), 1);
  EXPECT_THROW((void)inst.var(VarRole::X, 1, 0), std::out_of_range);
  EXPECT_THROW((void)inst.gate(1), std::out_of_range);
}

TEST(Placement, SharedTrapIsUnsat) {
  ZP_REQUIRE_SOLVER();
  auto inst = build_instance(make_arch({1, 0, 1, 0, 1, 0, 0, 0, 1}),
                             make_circuit(2, {}), 1, LayoutMode::Shielded);
  for (const auto role : {VarRole::X, VarRole::Y, VarRole::H, VarRole::V}) {
    inst.add(rule::kPinned,
             smt::eq(inst.var(role, 0, 0), inst.var(role, 1, 0)));
  }
  EXPECT_EQ(verdict(inst), VerdictKind::Unsat);
}

TEST(Placement, SlmQubitMustSitInTheCentre) {
  ZP_REQUIRE_SOLVER();
  auto inst = build_instance(make_arch({0, 0, 1, 1, 0, 0, 0, 0, 1}),
                             make_circuit(1, {}), 1, LayoutMode::Shielded);
  pin(inst, VarRole::InAod, 0, 0, 0);
  pin(inst, VarRole::H, 0, 0, 1);
  EXPECT_EQ(verdict(inst), VerdictKind::Unsat);
}

TEST(Placement, TwoQubitsShareOneSite) {
  ZP_REQUIRE_SOLVER();
  const auto inst = build_instance(make_arch({0, 0, 1, 1, 0, 0, 0, 0, 1}),
                                   make_circuit(2, {}), 1,
                                   LayoutMode::Shielded);
  EXPECT_EQ(verdict(inst), VerdictKind::Sat);
}

TEST(AodOrder, ColumnLabelsFollowX) {
  ZP_REQUIRE_SOLVER();
  auto inst = build_instance(no_shielding_architecture(), make_circuit(7, {}),
                             1, LayoutMode::Shielded);
  pin(inst, VarRole::InAod, 6, 0, 1);
  pin(inst, VarRole::InAod, 1, 0, 1);
  pin(inst, VarRole::Col, 6, 0, 1);
  pin(inst, VarRole::Col, 1, 0, 2);
  inst.add(rule::kPinned,
           smt::lt(inst.var(VarRole::X, 6, 0), inst.var(VarRole::X, 1, 0)));
  EXPECT_EQ(verdict(inst), VerdictKind::Sat);
}

TEST(AodOrder, SameColumnDifferentXIsUnsat) {
  ZP_REQUIRE_SOLVER();
  auto inst = build_instance(line_arch(), make_circuit(2, {}), 1,
                             LayoutMode::Shielded);
  for (int q = 0; q < 2; ++q) {
    pin(inst, VarRole::InAod, q, 0, 1);
    pin(inst, VarRole::Col, q, 0, 0);
  }
  inst.add(rule::kPinned, smt::ne(inst.var(VarRole::X, 0, 0),
                                  inst.var(VarRole::X, 1, 0)));
  EXPECT_EQ(verdict(inst), VerdictKind::Unsat);
}

TEST(AodOrder, OnlyTheOrderPreservingPermutationFits) {
  ZP_REQUIRE_SOLVER();
  std::array<int, 3> perm{0, 1, 2};
  int sat = 0;
  do {
    auto inst = build_instance(line_arch(), make_circuit(3, {}), 1,
                               LayoutMode::Shielded);
    for (int q = 0; q < 3; ++q) {
      place(inst, q, 0, aod(q, 0, 0, 0, perm[static_cast<std::size_t>(q)], 0));
    }
    const auto v = verdict(inst);
    const bool identity = perm == std::array<int, 3>{0, 1, 2};
    EXPECT_EQ(v, identity ? VerdictKind::Sat : VerdictKind::Unsat)
        << perm[0] << perm[1] << perm[2];
    sat += v == VerdictKind::Sat ? 1 : 0;
  } while (std::ranges::next_permutation(perm).found);
  EXPECT_EQ(sat, 1);
}

TEST(Gates, SharedQubitForcesDistinctStages) {
  ZP_REQUIRE_SOLVER();
  auto inst = build_instance(line_arch(), make_circuit(3, {{0, 1}, {1, 2}}), 2,
                             LayoutMode::NoShielding);
  inst.add(rule::kPinned, smt::eq(inst.gate(1), inst.gate(2)));
  EXPECT_EQ(verdict(inst), VerdictKind::Unsat);
  const auto free = build_instance(line_arch(),
                                   make_circuit(3, {{0, 1}, {1, 2}}), 2,
                                   LayoutMode::NoShielding);
  EXPECT_EQ(verdict(free), VerdictKind::Sat);
}

TEST(Gates, OperandsAtDifferentSitesIsUnsat) {
  ZP_REQUIRE_SOLVER();
  auto inst = build_instance(line_arch(), make_circuit(2, {{0, 1}}), 1,
                             LayoutMode::Shielded);
  inst.add(rule::kPinned, smt::ne(inst.var(VarRole::X, 0, 0),
                                  inst.var(VarRole::X, 1, 0)));
  EXPECT_EQ(verdict(inst), VerdictKind::Unsat);
}

TEST(Gates, DiagonalNeighboursInteractAtRadiusTwo) {
  ZP_REQUIRE_SOLVER();
  const auto arch = make_arch({0, 0, 1, 1, 0, 0, 0, 0, 2});
  auto inst =
      build_instance(arch, make_circuit(2, {{0, 1}}), 1, LayoutMode::Shielded);
  place(inst, 0, 0, slm(0, 0));
  place(inst, 1, 0, aod(0, 0, 1, 1, 0, 0));
  EXPECT_EQ(verdict(inst), VerdictKind::Sat);

  auto narrow = build_instance(make_arch({0, 0, 1, 1, 0, 0, 0, 0, 1}),
                               make_circuit(2, {{0, 1}}), 1,
                               LayoutMode::Shielded);
  place(narrow, 0, 0, slm(0, 0));
  place(narrow, 1, 0, aod(0, 0, 1, 1, 0, 0));
  EXPECT_EQ(verdict(narrow), VerdictKind::Unsat);
}

TEST(Shielding, IdleQubitInEntanglingRowIsUnsat) {
  ZP_REQUIRE_SOLVER();
  const auto arch = make_arch({1, 1, 1, 1, 1, 1, 1, 1, 2});
  auto inst = build_instance(arch, make_circuit(3, {{0, 1}}), 1,
                             LayoutMode::Shielded);
  pin(inst, VarRole::Y, 2, 0, 1);
  EXPECT_EQ(verdict(inst), VerdictKind::Unsat);
  auto stored = build_instance(arch, make_circuit(3, {{0, 1}}), 1,
                               LayoutMode::Shielded);
  pin(stored, VarRole::Y, 2, 0, 0);
  EXPECT_EQ(verdict(stored), VerdictKind::Sat);
}

TEST(Shielding, NoShieldingAllowsAnIdleQubitAlone) {
  ZP_REQUIRE_SOLVER();
  auto inst = build_instance(make_arch({1, 0, 1, 1, 1, 1, 0, 0, 2}),
                             make_circuit(3, {{0, 1}}), 1,
                             LayoutMode::NoShielding);
  pin(inst, VarRole::X, 0, 0, 0);
  pin(inst, VarRole::X, 2, 0, 1);
  EXPECT_EQ(verdict(inst), VerdictKind::Sat);
  auto crowded = build_instance(make_arch({1, 0, 1, 1, 1, 1, 0, 0, 2}),
                                make_circuit(3, {{0, 1}}), 1,
                                LayoutMode::NoShielding);
  pin(crowded, VarRole::X, 0, 0, 0);
  pin(crowded, VarRole::X, 2, 0, 0);
  EXPECT_EQ(verdict(crowded), VerdictKind::Unsat);
}

TEST(Shielding, TransferStageHasNoObligation) {
  ZP_REQUIRE_SOLVER();
  auto inst = build_instance(make_arch({0, 0, 1, 1, 1, 1, 0, 0, 1}),
                             make_circuit(2, {}), 1, LayoutMode::Shielded);
  pin(inst, VarRole::Rydberg, 0, 0, 0);
  EXPECT_EQ(verdict(inst), VerdictKind::Sat);
  auto lit = build_instance(make_arch({0, 0, 1, 1, 1, 1, 0, 0, 1}),
                            make_circuit(2, {}), 1, LayoutMode::Shielded);
  pin(lit, VarRole::Rydberg, 0, 0, 1);
  EXPECT_EQ(verdict(lit), VerdictKind::Unsat);
}

class Transitions : public ::testing::Test {
protected:
  static auto two_stage(int n, bool rydberg) -> SmtInstance {
    auto inst = build_instance(line_arch(), make_circuit(n, {}), 2,
                               LayoutMode::NoShielding);
    pin(inst, VarRole::Rydberg, 0, 0, rydberg ? 1 : 0);
    return inst;
  }
};

TEST_F(Transitions, SlmQubitCannotMoveAcrossExecution) {
  ZP_REQUIRE_SOLVER();
  auto inst = two_stage(1, true);
  pin(inst, VarRole::InAod, 0, 0, 0);
  inst.add(rule::kPinned, smt::ne(inst.var(VarRole::X, 0, 0),
                                  inst.var(VarRole::X, 0, 1)));
  EXPECT_EQ(verdict(inst), VerdictKind::Unsat);
}

TEST_F(Transitions, AodQubitMovesWithItsLines) {
  ZP_REQUIRE_SOLVER();
  auto inst = two_stage(1, true);
  place(inst, 0, 0, aod(0, 0, 1, 0, 1, 1));
  place(inst, 0, 1, aod(2, 0, -1, 0, 1, 1));
  EXPECT_EQ(verdict(inst), VerdictKind::Sat);
}

TEST_F(Transitions, AodMembershipIsFixedAcrossExecution) {
  ZP_REQUIRE_SOLVER();
  auto inst = two_stage(1, true);
  pin(inst, VarRole::InAod, 0, 0, 1);
  pin(inst, VarRole::InAod, 0, 1, 0);
  EXPECT_EQ(verdict(inst), VerdictKind::Unsat);
}

TEST_F(Transitions, StoringNeedsTheCentre) {
  ZP_REQUIRE_SOLVER();
  auto inst = two_stage(1, false);
  pin(inst, VarRole::InAod, 0, 0, 1);
  pin(inst, VarRole::InAod, 0, 1, 0);
  pin(inst, VarRole::H, 0, 0, 1);
  EXPECT_EQ(verdict(inst), VerdictKind::Unsat);
  auto centred = two_stage(1, false);
  pin(centred, VarRole::InAod, 0, 0, 1);
  pin(centred, VarRole::InAod, 0, 1, 0);
  EXPECT_EQ(verdict(centred), VerdictKind::Sat);
}

TEST_F(Transitions, StoreFlagEmptiesTheWholeColumn) {
  ZP_REQUIRE_SOLVER();
  auto inst = two_stage(2, false);
  place(inst, 0, 0, aod(0, 0, 0, 0, 1, 0));
  place(inst, 1, 0, aod(0, 0, 0, 1, 1, 1));
  pin(inst, VarRole::StoreCol, 1, 0, 1);
  pin(inst, VarRole::InAod, 1, 1, 1);
  EXPECT_EQ(verdict(inst), VerdictKind::Unsat);
}

TEST(TransferExample, StoreOneQubitAndLoadTwo) {
  ZP_REQUIRE_SOLVER();
  auto inst = build_instance(no_shielding_architecture(), make_circuit(7, {}),
                             2, LayoutMode::NoShielding);
  pin(inst, VarRole::Rydberg, 0, 0, 0);
  pin(inst, VarRole::StoreCol, 2, 0, 1);
  pin(inst, VarRole::LoadCol, 1, 0, 1);
  pin(inst, VarRole::InAod, 3, 0, 1);
  pin(inst, VarRole::Col, 3, 0, 2);
  pin(inst, VarRole::InAod, 3, 1, 0);
  for (const int q : {1, 2}) {
    pin(inst, VarRole::InAod, q, 0, 0);
    pin(inst, VarRole::InAod, q, 1, 1);
    pin(inst, VarRole::Col, q, 1, 1);
  }
  const auto v = testing::solve(inst);
  ASSERT_EQ(v.kind, VerdictKind::Sat);
  const auto schedule = extract_schedule(inst, v.model);
  const auto moved = transfers_between(schedule.stages[0], schedule.stages[1]);
  EXPECT_EQ(moved.stored, std::vector<int>{3});
  EXPECT_EQ(moved.loaded, (std::vector<int>{1, 2}));
}

TEST(Layouts, ModesDifferOnlyInShielding) {
  const auto a =
      build_instance(no_shielding_architecture(), steane(), 3,
                     LayoutMode::Shielded);
  const auto b =
      build_instance(no_shielding_architecture(), steane(), 3,
                     LayoutMode::NoShielding);
  std::multiset<std::string> left;
  std::multiset<std::string> right;
  for (const auto& x : a.assertions) {
    if (x.family != rule::kShielding && x.family != rule::kIdleSeparation) {
      left.insert(x.family + smt::to_smtlib(x.formula));
    }
  }
  for (const auto& x : b.assertions) {
    if (x.family != rule::kShielding && x.family != rule::kIdleSeparation) {
      right.insert(x.family + smt::to_smtlib(x.formula));
    }
  }
  EXPECT_EQ(left, right);
  EXPECT_FALSE(a.assertions_in(rule::kShielding).empty());
  EXPECT_TRUE(a.assertions_in(rule::kIdleSeparation).empty());
  EXPECT_TRUE(b.assertions_in(rule::kShielding).empty());
  EXPECT_FALSE(b.assertions_in(rule::kIdleSeparation).empty());
}

TEST(Instance, EmptyCircuitIsSat) {
  ZP_REQUIRE_SOLVER();
  const auto inst = build_instance(no_shielding_architecture(),
                                   make_circuit(0, {}), 1,
                                   LayoutMode::Shielded);
  EXPECT_EQ(verdict(inst), VerdictKind::Sat);
}

TEST(Instance, SteaneNeedsThreeStagesWithoutShielding) {
  ZP_REQUIRE_SOLVER();
  const auto two = build_instance(no_shielding_architecture(), steane(), 2,
                                  LayoutMode::NoShielding);
  EXPECT_EQ(verdict(two), VerdictKind::Unsat);
  const auto three = build_instance(no_shielding_architecture(), steane(), 3,
                                    LayoutMode::NoShielding);
  EXPECT_EQ(verdict(three), VerdictKind::Sat);
}

TEST(Instance, HandScheduleSatisfiesEveryFamily) {
  const auto arch = make_arch({1, 0, 1, 1, 1, 1, 0, 0, 2});
  const auto circuit = make_circuit(3, {{0, 1}, {1, 2}});
  Schedule s;
  Stage first;
  first.placements = {slm(0, 0), aod(0, 0, 1, 0, 0, 0), slm(1, 0)};
  first.executed_gates = {1};
  Stage second;
  second.placements = {slm(0, 0), aod(1, 0, 1, 0, 0, 0), slm(1, 0)};
  second.executed_gates = {2};
  s.stages = {first, second};
  ASSERT_TRUE(check_schedule(arch, circuit, LayoutMode::NoShielding, s).ok);
  const auto inst = build_instance(arch, circuit, 2, LayoutMode::NoShielding);
  EXPECT_TRUE(
      failed_families(inst, assignment_from_schedule(inst, s)).empty());

  auto broken = s;
  broken.stages[1].placements[0].x = 1;
  EXPECT_FALSE(
      failed_families(inst, assignment_from_schedule(inst, broken)).empty());
}

TEST(TransferCost, CountsQubitsAndPhases) {
  const auto arch = make_arch({1, 0, 1, 1, 1, 1, 0, 0, 2});
  const auto circuit = make_circuit(2, {});
  const auto inst = build_instance(arch, circuit, 3, LayoutMode::Shielded);
  Schedule s;
  Stage a;
  a.kind = StageKind::Transfer;
  a.placements = {aod(0, 0, 0, 0, 0, 0), aod(1, 0, 0, 0, 1, 0)};
  a.store_cols = {true, true};
  a.store_rows = {true, false};
  Stage b;
  b.kind = StageKind::Transfer;
  b.placements = {slm(0, 0), slm(1, 0)};
  b.load_cols = {true, false};
  b.load_rows = {true, false};
  Stage c;
  c.kind = StageKind::Transfer;
  c.placements = {aod(0, 0, 0, 0, 0, 0), slm(1, 0)};
  s.stages = {a, b, c};
  ASSERT_TRUE(check_schedule(arch, circuit, LayoutMode::Shielded, s).ok);
  const TransferWeights w{10, 100};
  const auto cost = transfer_cost(inst, w);
  EXPECT_EQ(smt::evaluate(cost, assignment_from_schedule(inst, s)),
            3 * 10 + 2 * 100);
}

} // namespace
} // namespace zoneprep
