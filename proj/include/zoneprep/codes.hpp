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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zoneprep {

/// A stabilizer code given by its generators as Pauli strings over IXYZ.
struct StabilizerCode {
  std::string name;
  int n = 0;
  int k = 0;
  int d = 0;
  std::vector<std::string> stabilizers;
  /// CZ count of the reference preparation circuit, when one is known.
  std::optional<int> reference_cz_count;
  /// Preparation circuit to use when the derived one misses the reference
  /// CZ count. Always checked with verify_preparation before use.
  std::optional<Circuit> fixture_circuit;

  /// Throws InvariantError unless the generators are well formed, pairwise
  /// commuting and independent with rank n - k.
  void validate() const;
};

/// Raised when a code's stabilizer state cannot be brought into graph form
/// using Hadamard corrections only.
class GraphReductionError : public std::runtime_error {
public:
  GraphReductionError(const std::string& what, int qubit)
      : std::runtime_error(what), qubit_(qubit) {}
  [[nodiscard]] auto qubit() const -> int { return qubit_; }

private:
  int qubit_;
};

/// Pauli operator in symplectic form. sign is 0 for +P and 1 for -P.
struct PauliRow {
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> z;
  std::uint8_t sign = 0;

  [[nodiscard]] static auto parse(std::string_view text) -> PauliRow;
  [[nodiscard]] auto str() const -> std::string;
  [[nodiscard]] auto size() const -> int { return static_cast<int>(x.size()); }
};

[[nodiscard]] auto commutes(const PauliRow& a, const PauliRow& b) -> bool;

/// Rank of the generators over GF(2) in the symplectic (x|z) representation.
[[nodiscard]] auto symplectic_rank(const std::vector<PauliRow>& rows) -> int;

[[nodiscard]] auto builtin_code_names() -> std::vector<std::string>;

/// One of steane, surface9, shor9, hamming15, tetrahedral15, honeycomb17.
[[nodiscard]] auto builtin_code(std::string_view name) -> StabilizerCode;

[[nodiscard]] auto code_to_json(const StabilizerCode& code) -> nlohmann::json;
[[nodiscard]] auto code_from_json(const nlohmann::json& j) -> StabilizerCode;

/// Extends the code's generators to n independent commuting generators of a
/// single codespace state. Z-type extensions are preferred, which yields the
/// logical |0...0> state for CSS codes.
[[nodiscard]] auto complete_stabilizer_state(const StabilizerCode& code)
    -> std::vector<PauliRow>;

/**
 * @brief Derives a graph-state preparation circuit for a codespace state.
 * @details Reduces the completed stabilizer tableau to the form
 * H_S |G> where |G> is a graph state and S a set of qubits receiving a final
 * Hadamard. Pivots are chosen lowest index first, so the output is
 * deterministic. Throws GraphReductionError when other local Cliffords
 * would be needed.
 */
[[nodiscard]] auto graph_state_circuit(const StabilizerCode& code) -> Circuit;

/// Largest register accepted by the dense state-vector check.
inline constexpr int kMaxStateVectorQubits = 20;

/**
 * Prepares |+>^n, applies every CZ and then H on the circuit's Hadamard
 * qubits, and checks that each stabilizer fixes the resulting state within
 * 1e-9 per amplitude. Independent of the GF(2) machinery above.
 */
[[nodiscard]] auto verify_preparation(const StabilizerCode& code,
                                      const Circuit& circuit) -> bool;

/// The circuit the compiler uses for a builtin code: the derived circuit,
/// or the code's fixture circuit when the derived CZ count differs from the
/// reference count.
[[nodiscard]] auto preparation_circuit(const StabilizerCode& code) -> Circuit;

} // namespace zoneprep
