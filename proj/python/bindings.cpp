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

// Native layer of the Python package. Values cross the boundary as JSON
// text; the package wraps them into dicts.

#include "zoneprep/cli.hpp"
#include "zoneprep/codes.hpp"
#include "zoneprep/fidelity.hpp"
#include "zoneprep/solve.hpp"
#include "zoneprep/validate.hpp"

#include <nlohmann/json.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

namespace py = pybind11;
using nlohmann::json;

namespace zoneprep {
namespace {

auto compile_json(const std::string& arch_text, const std::string& circuit_text,
                  const std::string& layout, double timeout,
                  std::optional<int> s_start, std::optional<int> s_cap,
                  double refine, const std::string& solver) -> std::string {
  cli::LayoutPreset preset{"custom", load_architecture(arch_text),
                           layout_from_string(layout)};
  const auto circuit = load_circuit(circuit_text);
  SolveConfig cfg;
  if (!solver.empty()) {
    cfg.solver_command = solver;
  }
  cfg.per_instance_timeout = timeout;
  cfg.s_start = s_start;
  cfg.s_cap = s_cap;
  cfg.refine_transfers = refine > 0.0;
  cfg.refine_budget = refine;
  cli::TableCell cell;
  {
    py::gil_scoped_release release;
    cell = cli::run_cell(circuit.name, circuit, preset, cfg);
  }
  switch (cell.status) {
  case cli::CellStatus::NoSchedule:
    throw NoScheduleError(cell.message);
  case cli::CellStatus::SolverFailure:
    throw SolverError(cell.message);
  case cli::CellStatus::Solved:
    break;
  }
  return json{{"schedule", to_json(cell.schedule)},
              {"certificate", to_json(cell.certificate)},
              {"fidelity", to_json(cell.fidelity)},
              {"validated", cell.validated}}
      .dump();
}

} // namespace
} // namespace zoneprep

PYBIND11_MODULE(_zoneprep, m) {
  using namespace zoneprep;
  m.doc() = "Minimal-stage scheduling on zoned neutral atom architectures";

  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError",
                                         PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<NoScheduleError>(m, "NoScheduleError",
                                          PyExc_RuntimeError);

  m.def("builtin_code_names", &builtin_code_names);
  m.def("builtin_code", [](const std::string& name) {
    return code_to_json(builtin_code(name)).dump();
  });
  m.def("preparation_circuit", [](const std::string& code_text) {
    return to_json(preparation_circuit(code_from_json(json::parse(code_text))))
        .dump();
  });
  m.def("verify_preparation",
        [](const std::string& code_text, const std::string& circuit_text) {
          return verify_preparation(code_from_json(json::parse(code_text)),
                                    load_circuit(circuit_text));
        });
  m.def("preset_names", [] {
    std::vector<std::string> names;
    for (const auto& p : cli::layout_presets()) {
      names.push_back(p.name);
    }
    return names;
  });
  m.def("preset", [](const std::string& name) {
    const auto p = cli::layout_preset(name);
    return py::make_tuple(to_json(p.arch).dump(),
                          std::string(to_string(p.mode)));
  });
  m.def("compile", &compile_json, py::arg("arch"), py::arg("circuit"),
        py::arg("layout"), py::arg("timeout"), py::arg("s_start"),
        py::arg("s_cap"), py::arg("refine"), py::arg("solver"));
  m.def("validate",
        [](const std::string& arch, const std::string& circuit,
           const std::string& layout, const std::string& schedule) {
          return to_json(check_schedule(load_architecture(arch),
                                        load_circuit(circuit),
                                        layout_from_string(layout),
                                        load_schedule(schedule)))
              .dump();
        });
  m.def("estimate_asp", [](const std::string& arch, const std::string& circuit,
                           const std::string& schedule) {
    return to_json(estimate_asp(load_architecture(arch), load_circuit(circuit),
                                load_schedule(schedule)))
        .dump();
  });
}
