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

#include "zoneprep/codes.hpp"

#include "code_fixtures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>

namespace zoneprep {
namespace {

// Phase exponent (power of i) picked up when multiplying single-qubit Paulis
// (x1,z1) * (x2,z2); the Aaronson-Gottesman g function.
auto phase_exponent(int x1, int z1, int x2, int z2) -> int {
  if (x1 == 0 && z1 == 0) {
    return 0;
  }
  if (x1 == 1 && z1 == 1) {
    return z2 - x2;
  }
  if (x1 == 1 && z1 == 0) {
    return z2 * (2 * x2 - 1);
  }
  return x2 * (1 - 2 * z2);
}

// target := source * target. Both operators must commute.
void multiply_into(PauliRow& target, const PauliRow& source) {
  int exponent = 2 * target.sign + 2 * source.sign;
  for (int j = 0; j < target.size(); ++j) {
    exponent += phase_exponent(source.x[j], source.z[j], target.x[j],
                               target.z[j]);
    target.x[j] ^= source.x[j];
    target.z[j] ^= source.z[j];
  }
  exponent = ((exponent % 4) + 4) % 4;
  target.sign = static_cast<std::uint8_t>(exponent == 2 ? 1 : 0);
}

void apply_hadamard(PauliRow& row, int q) {
  row.sign ^= static_cast<std::uint8_t>(row.x[q] & row.z[q]);
  std::swap(row.x[q], row.z[q]);
}

auto as_bits(const PauliRow& row) -> std::vector<std::uint8_t> {
  std::vector<std::uint8_t> v(row.x);
  v.insert(v.end(), row.z.begin(), row.z.end());
  return v;
}

// Row-echelon rank of a list of GF(2) vectors of equal length.
auto gf2_rank(std::vector<std::vector<std::uint8_t>> m) -> int {
  if (m.empty()) {
    return 0;
  }
  const auto cols = m.front().size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    auto pivot = std::find_if(m.begin() + rank, m.end(),
                              [c](const auto& r) { return r[c] != 0; });
    if (pivot == m.end()) {
      continue;
    }
    std::iter_swap(m.begin() + rank, pivot);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != static_cast<std::size_t>(rank) && m[r][c] != 0) {
        for (std::size_t k = 0; k < cols; ++k) {
          m[r][k] ^= m[rank][k];
        }
      }
    }
    ++rank;
  }
  return rank;
}

// Basis of {v : M v = 0} over GF(2), lowest free column first.
auto gf2_nullspace(std::vector<std::vector<std::uint8_t>> m, std::size_t cols)
    -> std::vector<std::vector<std::uint8_t>> {
  std::vector<int> pivot_of_col(cols, -1);
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    auto pivot = std::find_if(m.begin() + rank, m.end(),
                              [c](const auto& r) { return r[c] != 0; });
    if (pivot == m.end()) {
      continue;
    }
    std::iter_swap(m.begin() + rank, pivot);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != static_cast<std::size_t>(rank) && m[r][c] != 0) {
        for (std::size_t k = 0; k < cols; ++k) {
          m[r][k] ^= m[rank][k];
        }
      }
    }
    pivot_of_col[c] = rank++;
  }
  std::vector<std::vector<std::uint8_t>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (pivot_of_col[free] >= 0) {
      continue;
    }
    std::vector<std::uint8_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t c = 0; c < cols; ++c) {
      if (pivot_of_col[c] >= 0 && m[pivot_of_col[c]][free] != 0) {
        v[c] = 1;
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

auto parse_rows(const StabilizerCode& code) -> std::vector<PauliRow> {
  std::vector<PauliRow> rows;
  rows.reserve(code.stabilizers.size());
  for (const auto& s : code.stabilizers) {
    rows.push_back(PauliRow::parse(s));
  }
  return rows;
}

} // namespace

auto PauliRow::parse(std::string_view text) -> PauliRow {
  PauliRow row;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    row.sign = text.front() == '-' ? 1 : 0;
    text.remove_prefix(1);
  }
  for (const char ch : text) {
    switch (ch) {
    case 'I':
    case '_':
      row.x.push_back(0);
      row.z.push_back(0);
      break;
    case 'X':
      row.x.push_back(1);
      row.z.push_back(0);
      break;
    case 'Y':
      row.x.push_back(1);
      row.z.push_back(1);
      break;
    case 'Z':
      row.x.push_back(0);
      row.z.push_back(1);
      break;
    default:
      throw FormatError(std::string("invalid Pauli character '") + ch + "'");
    }
  }
  return row;
}

auto PauliRow::str() const -> std::string {
  std::string s = sign != 0 ? "-" : "";
  for (int j = 0; j < size(); ++j) {
    static constexpr char kChars[2][2] = {{'I', 'Z'}, {'X', 'Y'}};
    s.push_back(kChars[x[j]][z[j]]);
  }
  return s;
}

auto commutes(const PauliRow& a, const PauliRow& b) -> bool {
  int acc = 0;
  for (int j = 0; j < a.size(); ++j) {
    acc ^= (a.x[j] & b.z[j]) ^ (a.z[j] & b.x[j]);
  }
  return acc == 0;
}

auto symplectic_rank(const std::vector<PauliRow>& rows) -> int {
  std::vector<std::vector<std::uint8_t>> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    m.push_back(as_bits(r));
  }
  return gf2_rank(std::move(m));
}

void StabilizerCode::validate() const {
  if (n <= 0 || k < 0 || k >= n || d < 1) {
    throw InvariantError("code '" + name + "' has invalid parameters");
  }
  if (static_cast<int>(stabilizers.size()) != n - k) {
    throw InvariantError("code '" + name + "' lists " +
                         std::to_string(stabilizers.size()) +
                         " stabilizers, expected n - k = " +
                         std::to_string(n - k));
  }
  const auto rows = parse_rows(*this);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) {
      throw InvariantError("stabilizer " + std::to_string(i) +
                           " has the wrong length");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!commutes(rows[i], rows[j])) {
        throw InvariantError("stabilizers " + std::to_string(j) + " and " +
                             std::to_string(i) + " anticommute");
      }
    }
  }
  if (symplectic_rank(rows) != n - k) {
    throw InvariantError("stabilizers of '" + name +
                         "' are linearly dependent");
  }
}

auto builtin_code_names() -> std::vector<std::string> {
  return {"steane",    "surface9",      "shor9",
          "hamming15", "tetrahedral15", "honeycomb17"};
}

auto builtin_code(std::string_view name) -> StabilizerCode {
  for (const auto& f : detail::code_fixtures()) {
    if (f.name == name) {
      StabilizerCode code;
      code.name = f.name;
      code.n = f.n;
      code.k = f.k;
      code.d = f.d;
      code.stabilizers.assign(f.stabilizers.begin(), f.stabilizers.end());
      code.reference_cz_count = f.reference_cz_count;
      if (!f.fixture_edges.empty()) {
        Circuit c;
        c.name = code.name;
        c.num_qubits = code.n;
        c.cz_gates.assign(f.fixture_edges.begin(), f.fixture_edges.end());
        c.hadamard_qubits.insert(f.fixture_hadamards.begin(),
                                 f.fixture_hadamards.end());
        code.fixture_circuit = std::move(c);
      }
      return code;
    }
  }
  throw InvariantError("unknown code '" + std::string(name) + "'");
}

auto code_to_json(const StabilizerCode& code) -> nlohmann::json {
  nlohmann::json j = {{"name", code.name},
                      {"n", code.n},
                      {"k", code.k},
                      {"d", code.d},
                      {"stabilizers", code.stabilizers}};
  if (code.reference_cz_count) {
    j["reference_cz_count"] = *code.reference_cz_count;
  }
  if (code.fixture_circuit) {
    j["fixture_circuit"] = to_json(*code.fixture_circuit);
  }
  return j;
}

auto code_from_json(const nlohmann::json& j) -> StabilizerCode {
  StabilizerCode code;
  try {
    code.name = j.value("name", std::string{});
    code.n = j.at("n").get<int>();
    code.k = j.at("k").get<int>();
    code.d = j.at("d").get<int>();
    code.stabilizers = j.at("stabilizers").get<std::vector<std::string>>();
    if (j.contains("reference_cz_count")) {
      code.reference_cz_count = j.at("reference_cz_count").get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("code fixture: ") + e.what());
  }
  if (j.contains("fixture_circuit")) {
    code.fixture_circuit = circuit_from_json(j.at("fixture_circuit"));
  }
  code.validate();
  return code;
}

auto complete_stabilizer_state(const StabilizerCode& code)
    -> std::vector<PauliRow> {
  code.validate();
  auto rows = parse_rows(code);
  const auto n = static_cast<std::size_t>(code.n);

  const auto try_add = [&rows](PauliRow candidate) {
    rows.push_back(std::move(candidate));
    if (symplectic_rank(rows) != static_cast<int>(rows.size())) {
      rows.pop_back();
      return false;
    }
    return true;
  };

  // Z-type operators commuting with everything: Z(v) with X-part . v = 0.
  {
    std::vector<std::vector<std::uint8_t>> xs;
    for (const auto& r : rows) {
      xs.push_back(r.x);
    }
    for (auto& v : gf2_nullspace(xs, n)) {
      if (static_cast<int>(rows.size()) == code.n) {
        break;
      }
      PauliRow cand;
      cand.x.assign(n, 0);
      cand.z = std::move(v);
      try_add(std::move(cand));
    }
  }

  // General isotropic extension for non-CSS leftovers.
  while (static_cast<int>(rows.size()) < code.n) {
    // p = (a|b) commutes with (x|z) iff x.b + z.a = 0; unknowns ordered (a|b).
    std::vector<std::vector<std::uint8_t>> m;
    for (const auto& r : rows) {
      std::vector<std::uint8_t> eq(r.z);
      eq.insert(eq.end(), r.x.begin(), r.x.end());
      m.push_back(std::move(eq));
    }
    bool added = false;
    for (auto& v : gf2_nullspace(m, 2 * n)) {
      PauliRow cand;
      cand.x.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
      cand.z.assign(v.begin() + static_cast<std::ptrdiff_t>(n), v.end());
      if (try_add(std::move(cand))) {
        added = true;
        break;
      }
    }
    if (!added) {
      throw InvariantError("cannot complete stabilizer group of '" +
                           code.name + "'");
    }
  }
  return rows;
}

auto graph_state_circuit(const StabilizerCode& code) -> Circuit {
  auto rows = complete_stabilizer_state(code);
  const int n = code.n;

  // Row-reduce the X block; the non-pivot columns receive Hadamards.
  std::vector<bool> is_pivot(n, false);
  int rank = 0;
  for (int c = 0; c < n && rank < n; ++c) {
    int pivot = -1;
    for (int r = rank; r < n; ++r) {
      if (rows[r].x[c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      continue;
    }
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r != rank && rows[r].x[c] != 0) {
        multiply_into(rows[r], rows[rank]);
      }
    }
    is_pivot[c] = true;
    ++rank;
  }

  Circuit circuit;
  circuit.name = code.name;
  circuit.num_qubits = n;
  for (int q = 0; q < n; ++q) {
    if (!is_pivot[q]) {
      circuit.hadamard_qubits.insert(q);
      for (auto& row : rows) {
        apply_hadamard(row, q);
      }
    }
  }

  // Bring the X block to the identity.
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if (rows[r].x[c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) {
      throw GraphReductionError(
          "X block stays singular after Hadamards at qubit " +
              std::to_string(c),
          c);
    }
    std::swap(rows[c], rows[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r != c && rows[r].x[c] != 0) {
        multiply_into(rows[r], rows[c]);
      }
    }
  }

  for (int v = 0; v < n; ++v) {
    if (rows[v].z[v] != 0) {
      throw GraphReductionError(
          "qubit " + std::to_string(v) + " needs a phase gate", v);
    }
    if (rows[v].sign != 0) {
      throw GraphReductionError(
          "qubit " + std::to_string(v) + " needs a Pauli-Z correction", v);
    }
    for (int u = 0; u < v; ++u) {
      if (rows[u].z[v] != rows[v].z[u]) {
        throw InvariantError("adjacency matrix is not symmetric");
      }
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rows[u].z[v] != 0) {
        circuit.cz_gates.emplace_back(u, v);
      }
    }
  }
  return circuit;
}

auto verify_preparation(const StabilizerCode& code, const Circuit& circuit)
    -> bool {
  if (code.n != circuit.num_qubits) {
    throw InvariantError("code and circuit disagree on the qubit count");
  }
  if (code.n > kMaxStateVectorQubits) {
    throw InvariantError("too many qubits for the dense state-vector check");
  }
  using Amp = std::complex<double>;
  const std::size_t dim = std::size_t{1} << code.n;
  const double amp0 = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<Amp> psi(dim, Amp(amp0, 0.0));

  for (const auto& [a, b] : circuit.cz_gates) {
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < dim; ++i) {
      if ((i & mask) == mask) {
        psi[i] = -psi[i];
      }
    }
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (const int q : circuit.hadamard_qubits) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < dim; ++i) {
      if ((i & bit) == 0) {
        const Amp lo = psi[i];
        const Amp hi = psi[i | bit];
        psi[i] = s * (lo + hi);
        psi[i | bit] = s * (lo - hi);
      }
    }
  }

  for (const auto& text : code.stabilizers) {
    std::size_t xmask = 0;
    std::size_t zmask = 0;
    int num_y = 0;
    bool negative = false;
    int q = 0;
    for (const char ch : text) {
      if (ch == '-') {
        negative = !negative;
        continue;
      }
      if (ch == '+') {
        continue;
      }
      const std::size_t bit = std::size_t{1} << q;
      if (ch == 'X' || ch == 'Y') {
        xmask |= bit;
      }
      if (ch == 'Z' || ch == 'Y') {
        zmask |= bit;
      }
      num_y += ch == 'Y' ? 1 : 0;
      ++q;
    }
    // P|i> = i^{#Y} (-1)^{|i & zmask|} |i ^ xmask>
    static const Amp kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Amp global = kIPow[num_y % 4];
    if (negative) {
      global = -global;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      const bool odd = (std::popcount(i & zmask) & 1) != 0;
      const Amp image = global * (odd ? -psi[i] : psi[i]);
      if (std::abs(image - psi[i ^ xmask]) > 1e-9) {
        return false;
      }
    }
  }
  return true;
}

auto preparation_circuit(const StabilizerCode& code) -> Circuit {
  auto derived = graph_state_circuit(code);
  if (code.reference_cz_count && code.fixture_circuit &&
      derived.num_gates() != *code.reference_cz_count) {
    auto fixture = *code.fixture_circuit;
    fixture.validate();
    if (!verify_preparation(code, fixture)) {
      throw InvariantError("fixture circuit of '" + code.name +
                           "' does not prepare a codespace state");
    }
    return fixture;
  }
  return derived;
}

} // namespace zoneprep
