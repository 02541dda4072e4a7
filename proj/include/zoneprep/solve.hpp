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

#include "zoneprep/encode.hpp"
#include "zoneprep/model.hpp"
#include "zoneprep/smt.hpp"

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zoneprep {

/// The solver could not be run or produced output that is not SMT-LIB2.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// No satisfiable stage count up to the configured cap.
class NoScheduleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class VerdictKind : std::uint8_t { Sat, Unsat, Unknown };

enum class UnknownReason : std::uint8_t { None, Timeout, SolverUnknown, SolverError };

[[nodiscard]] auto to_string(VerdictKind kind) -> std::string_view;
[[nodiscard]] auto to_string(UnknownReason reason) -> std::string_view;

struct SolverVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  UnknownReason reason = UnknownReason::None;
  /// Every declared variable on Sat; empty otherwise.
  smt::Assignment model;
  /// Solver diagnostics, kept verbatim for errors.
  std::string message;
  double seconds = 0.0;
  bool from_cache = false;
};

/// Environment variable overriding the default solver command.
inline constexpr const char* kSolverEnvVar = "ZONEPREP_SOLVER";

/// "z3 -smt2 -in" unless the environment variable above is set.
[[nodiscard]] auto default_solver_command() -> std::string;

struct SolveConfig {
  /**
   * Whitespace-separated command. A "{file}" argument is replaced by the
   * path of the instance file; without it the instance is fed on stdin.
   */
  std::string solver_command = default_solver_command();
  /// Wall-clock limit per instance in seconds; <= 0 disables it.
  double per_instance_timeout = 300.0;
  /// First stage count to try; the sound lower bound when unset.
  std::optional<int> s_start;
  /// Last stage count to try; the architecture's cap when unset.
  std::optional<int> s_cap;
  /// Content-addressed store of instances and solver outputs.
  std::optional<std::string> cache_dir;
  /**
   * After the minimal stage count is found, repeatedly asks for a schedule
   * with strictly lower transfer cost at that count.
   */
  bool refine_transfers = false;
  /// Total wall-clock budget of the refinement in seconds.
  double refine_budget = 120.0;
};

/// SMT-LIB2 text of the instance, identical bytes for identical instances.
[[nodiscard]] auto to_smtlib(const SmtInstance& inst) -> std::string;

/// 64-bit FNV-1a digest, hex encoded.
[[nodiscard]] auto content_hash(std::string_view text) -> std::string;

/**
 * Parses solver output: a status line, optionally followed by a model.
 * Throws SolverError on anything else.
 */
[[nodiscard]] auto parse_solver_output(std::string_view output)
    -> SolverVerdict;

/// Adds default values (0, false) for declared variables the model omits.
void complete_model(const SmtInstance& inst, smt::Assignment& model);

[[nodiscard]] auto solve_instance(const SmtInstance& inst,
                                  const SolveConfig& cfg) -> SolverVerdict;

struct StageAttempt {
  int s = 0;
  VerdictKind kind = VerdictKind::Unknown;
  UnknownReason reason = UnknownReason::None;
  double seconds = 0.0;
};

struct MinimalityCertificate {
  /// Stage count of the returned schedule.
  int s = 0;
  /// Stage counts below this were skipped by the lower bound.
  int lower_bound = 0;
  std::string bound_argument;
  std::vector<StageAttempt> attempts;
  /// Every stage count from lower_bound to s - 1 was proved unsatisfiable.
  bool minimal = false;
  /// The search started above the lower bound, so smaller counts are
  /// unexplored.
  bool started_above_bound = false;
  /// Transfer cost of the first and of the returned schedule, if refined.
  std::optional<std::int64_t> initial_cost;
  std::optional<std::int64_t> final_cost;
  /// The returned schedule has the least transfer cost at this stage count.
  bool cost_optimal = false;
};

[[nodiscard]] auto to_json(const MinimalityCertificate& cert) -> nlohmann::json;

struct LowerBound {
  int s = 1;
  std::string argument;
};

/**
 * Sound lower bound on the stage count: gates sharing a qubit need distinct
 * stages, and one stage executes at most min(n / 2, entangling trap pairs)
 * gates.
 */
[[nodiscard]] auto stage_lower_bound(const Architecture& arch,
                                     const Circuit& circuit) -> LowerBound;

struct MinimalResult {
  Schedule schedule;
  MinimalityCertificate certificate;
};

/**
 * @brief Tries s = s_start, s_start + 1, ... until an instance is satisfiable.
 * @details The decoded schedule is checked by the independent validator
 * before it is returned. Throws NoScheduleError when the cap is reached and
 * SolverError when the solver fails.
 */
[[nodiscard]] auto find_minimal_schedule(const Architecture& arch,
                                         const Circuit& circuit,
                                         LayoutMode layout,
                                         const SolveConfig& cfg)
    -> MinimalResult;

} // namespace zoneprep
