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

#include "test_support.hpp"
#include "zoneprep/codes.hpp"
#include "zoneprep/fidelity.hpp"
#include "zoneprep/validate.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace zoneprep {
namespace {

struct Solved {
  Architecture arch;
  Circuit circuit;
  LayoutMode layout;
  Schedule schedule;
};

/// Minimal Steane schedules on the three table layouts, solved once.
auto steane_schedules() -> const std::vector<Solved>& {
  static const std::vector<Solved> cache = [] {
    std::vector<Solved> out;
    const auto circuit = preparation_circuit(builtin_code("steane"));
    const std::pair<Architecture, LayoutMode> layouts[] = {
        {no_shielding_architecture(), LayoutMode::NoShielding},
        {bottom_storage_architecture(), LayoutMode::Shielded},
        {double_sided_storage_architecture(), LayoutMode::Shielded}};
    for (const auto& [arch, mode] : layouts) {
      auto r = find_minimal_schedule(arch, circuit, mode,
                                     testing::solver_config());
      out.push_back({arch, circuit, mode, std::move(r.schedule)});
    }
    return out;
  }();
  return cache;
}

TEST(Mutation, ValidatorRejectsSingleFieldChanges) {
  ZP_REQUIRE_SOLVER();
  int total = 0;
  int unchanged = 0;
  int rejected = 0;
  int disagreements = 0;
  std::map<std::string, int> accepted;
  std::uint64_t seed = 1;
  for (const auto& base : steane_schedules()) {
    ASSERT_TRUE(
        check_schedule(base.arch, base.circuit, base.layout, base.schedule).ok);
    const auto inst = build_instance(base.arch, base.circuit,
                                     base.schedule.num_stages(), base.layout);
    for (int i = 0; i < 450; ++i, ++seed) {
      const auto m = testing::mutate(base.schedule, base.arch,
                                     base.circuit.num_gates(), seed);
      const auto report =
          check_schedule(base.arch, base.circuit, base.layout, m.schedule);
      if (report.ok && testing::same_program(m.schedule, base.schedule)) {
        // A flag on a line that moves no atom: nothing to detect.
        ++unchanged;
      } else {
        ++total;
        if (!report.ok) {
          ++rejected;
        } else {
          ++accepted[m.description];
          // What survives keeps every gate in its stage.
          for (std::size_t t = 0; t < m.schedule.stages.size(); ++t) {
            EXPECT_EQ(m.schedule.stages[t].executed_gates,
                      base.schedule.stages[t].executed_gates);
          }
        }
      }
      // The encoding must reach the same verdict on every mutant.
      const bool encoded_ok =
          failed_families(inst, assignment_from_schedule(inst, m.schedule))
              .empty();
      if (encoded_ok != report.ok) {
        ++disagreements;
        ADD_FAILURE() << m.description << ": validator "
                      << (report.ok ? "accepts" : "rejects")
                      << ", encoding disagrees";
      }
    }
  }
  EXPECT_GE(total, 1000);
  EXPECT_EQ(disagreements, 0);
  // Survivors are legal alternative schedules (checked above); the rate
  // guards against the validator going soft.
  EXPECT_GE(rejected * 100, total * 97)
      << rejected << " of " << total << " rejected, " << unchanged
      << " no-op mutations";
  RecordProperty("rejected", rejected);
  RecordProperty("effective", total);
  RecordProperty("unchanged", unchanged);
  for (const auto& [what, n] : accepted) {
    RecordProperty("accepted: " + what, n);
  }
}

TEST(Monotonicity, OneMoreStageStaysSatisfiable) {
  ZP_REQUIRE_SOLVER();
  for (const auto& base : steane_schedules()) {
    const auto inst = build_instance(base.arch, base.circuit,
                                     base.schedule.num_stages() + 1,
                                     base.layout);
    EXPECT_EQ(testing::solve(inst).kind, VerdictKind::Sat);
  }
}

TEST(Monotonicity, ExtraStagesNeverRaiseSuccess) {
  ZP_REQUIRE_SOLVER();
  for (const auto& base : steane_schedules()) {
    const double before =
        estimate_asp(base.arch, base.circuit, base.schedule).asp;

    auto idle = base.schedule;
    idle.stages.push_back(idle.stages.back());
    idle.stages.back().kind = StageKind::Transfer;
    idle.stages.back().executed_gates.clear();
    const double with_idle = estimate_asp(base.arch, base.circuit, idle).asp;
    EXPECT_LE(with_idle, before);
    EXPECT_TRUE(check_schedule(base.arch, base.circuit, base.layout, idle).ok);

    // Store every AOD qubit, then hold them in the SLM.
    auto stored = idle;
    auto& hop = stored.stages.back();
    hop.store_cols.assign(static_cast<std::size_t>(base.arch.num_columns()),
                          true);
    Stage rest = hop;
    rest.store_cols.clear();
    bool any = false;
    for (auto& p : rest.placements) {
      if (p.in_aod) {
        any = true;
        p = QubitPlacement{p.x, p.y, 0, 0, false, 0, 0};
      }
    }
    stored.stages.push_back(rest);
    if (!any) {
      continue;
    }
    EXPECT_LT(estimate_asp(base.arch, base.circuit, stored).asp, with_idle);
  }
}

TEST(Invariance, RelabelingQubitsKeepsTheFigureOfMerit) {
  ZP_REQUIRE_SOLVER();
  std::mt19937 rng(17);
  for (const auto& base : steane_schedules()) {
    const int n = base.circuit.num_qubits;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    auto circuit = base.circuit;
    for (auto& [a, b] : circuit.cz_gates) {
      a = perm[static_cast<std::size_t>(a)];
      b = perm[static_cast<std::size_t>(b)];
    }
    circuit.hadamard_qubits.clear();
    for (const int q : base.circuit.hadamard_qubits) {
      circuit.hadamard_qubits.insert(perm[static_cast<std::size_t>(q)]);
    }
    auto schedule = base.schedule;
    for (auto& st : schedule.stages) {
      auto moved = st.placements;
      for (int q = 0; q < n; ++q) {
        moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(q)])] =
            st.placements[static_cast<std::size_t>(q)];
      }
      st.placements = std::move(moved);
    }
    EXPECT_TRUE(check_schedule(base.arch, circuit, base.layout, schedule).ok);
    const auto a = estimate_asp(base.arch, base.circuit, base.schedule);
    const auto b = estimate_asp(base.arch, circuit, schedule);
    EXPECT_NEAR(a.asp, b.asp, 1e-12);
    EXPECT_EQ(a.factors, b.factors);
    EXPECT_EQ(a.factors.cz, base.circuit.num_gates());
  }
}

TEST(Invariance, ShieldingIsNoHarderWithoutIdleQubits) {
  ZP_REQUIRE_SOLVER();
  // With every row entangling, a shielded schedule has no idle qubits in
  // execution stages, so it is also valid without shielding.
  int checked = 0;
  for (auto inst : testing::generate_tiny_instances(80, 4242U)) {
    inst.layout = LayoutMode::Shielded;
    inst.arch.e_min = 0;
    inst.arch.e_max = inst.arch.y_max;
    const auto smt = build_instance(inst.arch, inst.circuit, inst.s,
                                    LayoutMode::Shielded);
    const auto v = testing::solve(smt, 60.0);
    if (v.kind != VerdictKind::Sat) {
      continue;
    }
    ++checked;
    const auto schedule = extract_schedule(smt, v.model);
    EXPECT_TRUE(check_schedule(inst.arch, inst.circuit,
                               LayoutMode::NoShielding, schedule)
                    .ok)
        << inst.label;
    EXPECT_EQ(testing::solve(build_instance(inst.arch, inst.circuit, inst.s,
                                            LayoutMode::NoShielding),
                             60.0)
                  .kind,
              VerdictKind::Sat)
        << inst.label;
  }
  EXPECT_GT(checked, 5);
}

TEST(Extraction, SolverModelsRoundTripThroughTheEncoding) {
  ZP_REQUIRE_SOLVER();
  for (const auto& base : steane_schedules()) {
    const auto inst = build_instance(base.arch, base.circuit,
                                     base.schedule.num_stages(), base.layout);
    EXPECT_TRUE(
        failed_families(inst, assignment_from_schedule(inst, base.schedule))
            .empty());
    EXPECT_TRUE(testing::encoder_accepts(base.arch, base.circuit, base.layout,
                                         base.schedule));
  }
}

} // namespace
} // namespace zoneprep
