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

#include "zoneprep/validate.hpp"

#include "test_support.hpp"
#include "zoneprep/codes.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

namespace zoneprep {
namespace {

using testing::aod;
using testing::make_arch;
using testing::make_circuit;
using testing::slm;

/// 2x2 sites; row 0 is the entangling zone, row 1 storage.
auto small_arch() -> Architecture {
  return make_arch({1, 1, 1, 1, 1, 1, 0, 0, 2});
}

auto stage(StageKind kind, std::vector<QubitPlacement> placements,
           std::set<int> gates = {}) -> Stage {
  Stage s;
  s.kind = kind;
  s.placements = std::move(placements);
  s.executed_gates = std::move(gates);
  return s;
}

auto report_of(const Circuit& c, std::vector<Stage> stages,
               LayoutMode layout = LayoutMode::Shielded) -> ValidationReport {
  Schedule s;
  s.stages = std::move(stages);
  return check_schedule(small_arch(), c, layout, s);
}

/// One gate on qubits 0 and 1, executed at site (0,0); qubit 2 in storage.
auto good_stage() -> Stage {
  return stage(StageKind::Execution,
               {slm(0, 0), aod(0, 0, 1, 0, 0, 0), slm(1, 1)}, {1});
}

auto gate_circuit() -> Circuit { return make_circuit(3, {{0, 1}}); }

TEST(Check, AcceptsAHandSchedule) {
  const auto r = report_of(gate_circuit(), {good_stage()});
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.executed_gate_cover.at(1), 0);
}

TEST(Check, SharedTrapIsOccupancyViolation) {
  auto s = good_stage();
  s.placements[2] = slm(0, 0);
  const auto r = report_of(gate_circuit(), {s});
  EXPECT_FALSE(r.ok);
  ASSERT_EQ(r.count(std::string(rule::kTrapOccupancy)), 1);
  const auto it = std::ranges::find(r.violations, std::string(rule::kTrapOccupancy),
                                    &Violation::rule);
  EXPECT_EQ(it->qubits, (std::vector<int>{0, 2}));
  EXPECT_EQ(it->stage, 0);
}

TEST(Check, OutOfBoundsAndOffCentre) {
  auto s = good_stage();
  s.placements[2] = slm(2, 1);
  auto r = report_of(gate_circuit(), {s});
  EXPECT_EQ(r.count(std::string(rule::kBounds)), 1);
  s = good_stage();
  s.placements[2].h = 1;
  r = report_of(gate_circuit(), {s});
  EXPECT_EQ(r.count(std::string(rule::kSlmCenter)), 1);
  s = good_stage();
  s.placements[1].col = 2;
  r = report_of(gate_circuit(), {s});
  EXPECT_EQ(r.count(std::string(rule::kBounds)), 1);
}

TEST(Check, AodOrderBothAxes) {
  const auto c = make_circuit(2, {});
  auto r = report_of(c, {stage(StageKind::Transfer,
                               {aod(0, 1, 0, 0, 1, 0), aod(1, 1, 0, 0, 0, 0)})});
  EXPECT_EQ(r.count(std::string(rule::kColumnOrder)), 1);
  EXPECT_EQ(r.count(std::string(rule::kRowOrder)), 0);
  r = report_of(c, {stage(StageKind::Transfer,
                          {aod(0, 0, 0, 1, 0, 0), aod(0, 0, 0, -1, 0, 1)})});
  EXPECT_EQ(r.count(std::string(rule::kRowOrder)), 1);
  r = report_of(c, {stage(StageKind::Transfer,
                          {aod(0, 0, 0, 0, 0, 0), aod(1, 1, 0, 0, 0, 1)})});
  EXPECT_EQ(r.count(std::string(rule::kColumnOrder)), 1);
}

TEST(Check, GateNeedsAdjacentOperandsInTheZone) {
  auto s = good_stage();
  s.placements[1] = aod(1, 0, 0, 0, 0, 0);
  EXPECT_EQ(report_of(gate_circuit(), {s}).count(std::string(rule::kGateExecution)),
            1);
  s = good_stage();
  s.placements[0] = slm(0, 1);
  s.placements[1] = aod(0, 1, 1, 0, 0, 0);
  s.placements[2] = slm(1, 1);
  EXPECT_EQ(report_of(gate_circuit(), {s}).count(std::string(rule::kGateExecution)),
            1);
  const auto narrow = make_arch({1, 1, 1, 1, 1, 1, 0, 0, 1});
  Schedule sched;
  sched.stages = {good_stage()};
  EXPECT_EQ(check_schedule(narrow, gate_circuit(), LayoutMode::Shielded, sched)
                .count(std::string(rule::kGateExecution)),
            1);
}

TEST(Check, GateInTransferStage) {
  auto s = good_stage();
  s.kind = StageKind::Transfer;
  EXPECT_EQ(report_of(gate_circuit(), {s}).count(std::string(rule::kGateExecution)),
            1);
}

TEST(Check, QubitInTwoGatesOfOneStage) {
  const auto c = make_circuit(3, {{0, 1}, {1, 2}});
  const auto r = report_of(
      c, {stage(StageKind::Execution,
                {slm(0, 0), aod(0, 0, 1, 0, 0, 0), aod(0, 0, 1, 1, 0, 1)},
                {1, 2})});
  EXPECT_EQ(r.count(std::string(rule::kGateExclusivity)), 1);
}

TEST(Check, ShieldingAndSeparation) {
  const auto c = gate_circuit();
  auto exposed = good_stage();
  exposed.placements[2] = slm(1, 0);
  EXPECT_EQ(report_of(c, {exposed}).count(std::string(rule::kShielding)), 1);
  EXPECT_TRUE(report_of(c, {exposed}, LayoutMode::NoShielding).ok);

  auto crowded = good_stage();
  crowded.placements[2] = aod(0, 0, 1, 1, 0, 1);
  EXPECT_EQ(report_of(c, {crowded}, LayoutMode::NoShielding)
                .count(std::string(rule::kIdleSeparation)),
            2);
}

TEST(Check, EveryGateExactlyOnce) {
  const auto c = make_circuit(3, {{0, 1}, {1, 2}});
  auto r = report_of(c, {good_stage()});
  EXPECT_EQ(r.count(std::string(rule::kGateCover)), 1);
  r = report_of(c, {good_stage(),
                    stage(StageKind::Execution,
                          {slm(0, 0), aod(0, 0, 1, 0, 0, 0), slm(1, 1)},
                          {1})});
  EXPECT_EQ(r.count(std::string(rule::kGateCover)), 2);
  auto bogus = good_stage();
  bogus.executed_gates = {1, 2, 7};
  r = report_of(c, {bogus});
  EXPECT_GE(r.count(std::string(rule::kGateCover)), 1);
}

TEST(Check, ExecutionTransitions) {
  const auto c = gate_circuit();
  auto next = stage(StageKind::Transfer,
                    {slm(0, 0), aod(1, 0, 1, 0, 0, 0), slm(1, 1)});
  EXPECT_TRUE(report_of(c, {good_stage(), next}).ok);

  auto moved = next;
  moved.placements[0] = slm(0, 1);
  moved.placements[2] = slm(1, 1);
  EXPECT_EQ(report_of(c, {good_stage(), moved}).count(std::string(rule::kExecSlmFixed)),
            1);

  auto toggled = next;
  toggled.placements[1] = slm(1, 0);
  EXPECT_EQ(
      report_of(c, {good_stage(), toggled}).count(std::string(rule::kExecTrapType)),
      1);

  auto relined = next;
  relined.placements[1].row = 1;
  EXPECT_EQ(
      report_of(c, {good_stage(), relined}).count(std::string(rule::kExecAodLines)),
      1);
}

class TransferRules : public ::testing::Test {
protected:
  Circuit c = make_circuit(2, {});

  /// Qubit 0 in the AOD at (0,1) on line (0,0); qubit 1 in SLM at (1,1).
  static auto before() -> Stage {
    return stage(StageKind::Transfer, {aod(0, 1, 0, 0, 0, 0), slm(1, 1)});
  }
};

TEST_F(TransferRules, StoreAndLoad) {
  auto t = before();
  t.store_cols = {true, false};
  t.load_cols = {false, true};
  const auto after =
      stage(StageKind::Transfer, {slm(0, 1), aod(1, 1, 0, 0, 1, 0)});
  const auto r = report_of(c, {t, after});
  EXPECT_TRUE(r.ok) << to_json(r).dump(2);
  EXPECT_TRUE(r.warnings.empty());
}

TEST_F(TransferRules, StoringOffCentre) {
  auto t = before();
  t.placements[0].h = 1;
  t.store_cols = {true, false};
  const auto r =
      report_of(c, {t, stage(StageKind::Transfer, {slm(0, 1), slm(1, 1)})});
  EXPECT_EQ(r.count(std::string(rule::kStoreCenter)), 1);
}

TEST_F(TransferRules, StoredQubitKeepsItsSite) {
  auto t = before();
  t.store_cols = {true, false};
  const auto r =
      report_of(c, {t, stage(StageKind::Transfer, {slm(0, 0), slm(1, 1)})});
  EXPECT_EQ(r.count(std::string(rule::kStorePosition)), 1);
}

TEST_F(TransferRules, StoreLineEmptiesItsColumn) {
  const auto t0 = stage(StageKind::Transfer,
                        {aod(0, 1, 0, 0, 0, 0), aod(0, 1, 0, 1, 0, 1)});
  auto t = t0;
  t.store_cols = {true, false};
  const auto r = report_of(
      c, {t, stage(StageKind::Transfer, {slm(0, 1), aod(0, 1, 0, 1, 0, 1)})});
  EXPECT_EQ(r.count(std::string(rule::kStoreLines)), 1);

  const auto unflagged = report_of(
      c, {t0, stage(StageKind::Transfer, {slm(0, 1), aod(0, 1, 0, 1, 0, 1)})});
  EXPECT_EQ(unflagged.count(std::string(rule::kStoreLines)), 1);
}

TEST_F(TransferRules, LoadNeedsALoadLine) {
  const auto r = report_of(
      c, {before(), stage(StageKind::Transfer,
                          {aod(0, 1, 0, 0, 0, 0), aod(1, 1, 0, 0, 1, 0)})});
  EXPECT_EQ(r.count(std::string(rule::kLoadLines)), 1);
}

TEST_F(TransferRules, EveryLineLoadingCatchesSlmQubits) {
  auto t = before();
  t.load_rows = {true, true};
  const auto r = report_of(
      c, {t, stage(StageKind::Transfer, {aod(0, 1, 0, 0, 0, 0), slm(1, 1)})});
  EXPECT_EQ(r.count(std::string(rule::kLoadLines)), 1);
}

TEST_F(TransferRules, LoadedLinesKeepOrder) {
  auto t = before();
  t.load_cols = {true, true};
  const auto r = report_of(
      c, {t, stage(StageKind::Transfer,
                   {aod(0, 1, 0, 0, 1, 0), aod(1, 1, 0, 0, 0, 0)})});
  EXPECT_GE(r.count(std::string(rule::kLoadColumnOrder)), 1);
}

TEST_F(TransferRules, PureShuttleIsOnlyAWarning) {
  const auto r = report_of(
      c, {before(), stage(StageKind::Transfer, {aod(0, 0, 0, 0, 0, 0), slm(1, 1)})});
  EXPECT_TRUE(r.ok);
  ASSERT_EQ(r.warnings.size(), 1U);
  EXPECT_EQ(r.warnings[0].rule, "empty-transfer");
}

TEST(Check, ShapeMismatchThrows) {
  Schedule s;
  s.stages = {stage(StageKind::Execution, {slm(0, 0)})};
  EXPECT_THROW((void)check_schedule(small_arch(), gate_circuit(),
                                    LayoutMode::Shielded, s),
               InvariantError);
  auto flags = good_stage();
  flags.store_cols = {false, false, false};
  s.stages = {flags};
  EXPECT_THROW((void)check_schedule(small_arch(), gate_circuit(),
                                    LayoutMode::Shielded, s),
               InvariantError);
}

TEST(Check, ReportSerializes) {
  auto s = good_stage();
  s.placements[2] = slm(0, 0);
  const auto j = to_json(report_of(gate_circuit(), {s}));
  EXPECT_FALSE(j.at("ok").get<bool>());
  EXPECT_EQ(j.at("violations")[0].at("rule"), std::string(rule::kTrapOccupancy));
  EXPECT_EQ(j.at("executed_gate_cover").at("1"), 0);
}

TEST(Check, TransfersBetween) {
  const auto a = stage(StageKind::Transfer,
                       {aod(0, 0, 0, 0, 0, 0), slm(1, 0), slm(0, 1)});
  const auto b = stage(StageKind::Transfer,
                       {slm(0, 0), aod(1, 0, 0, 0, 0, 0), slm(0, 1)});
  const auto moved = transfers_between(a, b);
  EXPECT_EQ(moved.stored, std::vector<int>{0});
  EXPECT_EQ(moved.loaded, std::vector<int>{1});
}

/// Whether the gates outside `first` split into two sets of disjoint pairs.
auto splits_into_two_layers(const std::vector<GatePair>& g,
                            const std::set<std::size_t>& first) -> bool {
  std::vector<GatePair> rest;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!first.contains(i)) {
      rest.push_back(g[i]);
    }
  }
  const auto disjoint = [](const std::vector<GatePair>& layer) {
    std::set<int> q;
    for (const auto& [a, b] : layer) {
      if (!q.insert(a).second || !q.insert(b).second) {
        return false;
      }
    }
    return true;
  };
  for (unsigned mask = 0; mask < (1U << rest.size()); ++mask) {
    std::vector<GatePair> one;
    std::vector<GatePair> two;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      ((mask >> i) & 1U) != 0 ? one.push_back(rest[i]) : two.push_back(rest[i]);
    }
    if (disjoint(one) && disjoint(two)) {
      return true;
    }
  }
  return false;
}

/// The Steane graph relabelled so that three disjoint edges become the first
/// gates (q1,q7), (q6,q5), (q4,q2), with q3 left out.
auto labelled_steane() -> Circuit {
  const auto base = preparation_circuit(builtin_code("steane"));
  const auto& g = base.cz_gates;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = a + 1; b < g.size(); ++b) {
      for (std::size_t c = b + 1; c < g.size(); ++c) {
        std::set<int> used{g[a].first, g[a].second, g[b].first,
                           g[b].second, g[c].first, g[c].second};
        if (used.size() != 6 || !splits_into_two_layers(g, {a, b, c})) {
          continue;
        }
        int rest = 0;
        while (used.contains(rest)) {
          ++rest;
        }
        std::vector<int> to(7);
        to[static_cast<std::size_t>(g[a].first)] = 0;
        to[static_cast<std::size_t>(g[a].second)] = 6;
        to[static_cast<std::size_t>(g[b].first)] = 5;
        to[static_cast<std::size_t>(g[b].second)] = 4;
        to[static_cast<std::size_t>(g[c].first)] = 3;
        to[static_cast<std::size_t>(g[c].second)] = 1;
        to[static_cast<std::size_t>(rest)] = 2;
        Circuit out = base;
        out.cz_gates.clear();
        out.hadamard_qubits.clear();
        for (const auto i : {a, b, c}) {
          out.cz_gates.emplace_back(to[static_cast<std::size_t>(g[i].first)],
                                    to[static_cast<std::size_t>(g[i].second)]);
        }
        for (std::size_t i = 0; i < g.size(); ++i) {
          if (i != a && i != b && i != c) {
            out.cz_gates.emplace_back(
                to[static_cast<std::size_t>(g[i].first)],
                to[static_cast<std::size_t>(g[i].second)]);
          }
        }
        for (const int q : base.hadamard_qubits) {
          out.hadamard_qubits.insert(to[static_cast<std::size_t>(q)]);
        }
        return out;
      }
    }
  }
  return base;
}

TEST(Check, ThreeBeamSteaneScheduleWithoutShielding) {
  ZP_REQUIRE_SOLVER();
  const auto arch = no_shielding_architecture();
  const auto circuit = labelled_steane();
  ASSERT_EQ(circuit.cz_gates[0], (GatePair{0, 6}));
  ASSERT_EQ(circuit.cz_gates[1], (GatePair{5, 4}));
  ASSERT_EQ(circuit.cz_gates[2], (GatePair{3, 1}));

  auto inst = build_instance(arch, circuit, 3, LayoutMode::NoShielding);
  for (int i = 1; i <= 3; ++i) {
    inst.add(rule::kPinned, smt::eq(inst.gate(i), 0));
  }
  for (int i = 4; i <= circuit.num_gates(); ++i) {
    inst.add(rule::kPinned, smt::lnot(smt::eq(inst.gate(i), 0)));
  }
  const auto v = testing::solve(inst);
  ASSERT_EQ(v.kind, VerdictKind::Sat);
  const auto schedule = extract_schedule(inst, v.model);
  EXPECT_EQ(schedule.num_execution_stages(), 3);
  EXPECT_EQ(schedule.stages[0].executed_gates, (std::set<int>{1, 2, 3}));
  const auto& q3 = schedule.stages[0].placements[2];
  for (int q = 0; q < 7; ++q) {
    const auto& p = schedule.stages[0].placements[static_cast<std::size_t>(q)];
    if (q != 2) {
      EXPECT_FALSE(p.x == q3.x && p.y == q3.y) << "qubit " << q;
    }
  }
  const auto r =
      check_schedule(arch, circuit, LayoutMode::NoShielding, schedule);
  EXPECT_TRUE(r.ok) << to_json(r).dump(2);
}

} // namespace
} // namespace zoneprep
