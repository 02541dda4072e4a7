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

#include "zoneprep/cli.hpp"

#include "zoneprep/codes.hpp"
#include "zoneprep/validate.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <sstream>

namespace zoneprep::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

auto split_list(const std::string& text) -> std::vector<std::string> {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

auto fixed(double v, int digits) -> std::string {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

auto status_name(CellStatus s) -> std::string {
  switch (s) {
  case CellStatus::Solved:
    return "solved";
  case CellStatus::NoSchedule:
    return "no-schedule";
  case CellStatus::SolverFailure:
    return "solver-failure";
  }
  return "unknown";
}

/// Shared inputs of the compile and validate subcommands.
struct Inputs {
  std::string arch_file;
  std::string preset;
  std::string code;
  std::string circuit_file;
  std::string layout;

  void add_to(CLI::App& app) {
    app.add_option("--arch", arch_file, "Architecture JSON file");
    app.add_option("--preset", preset,
                   "Architecture preset: no-shielding, bottom-storage, "
                   "double-sided");
    app.add_option("--code", code, "Builtin code name");
    app.add_option("--circuit", circuit_file, "Circuit JSON file");
    app.add_option("--layout", layout, "shielded or no-shielding");
  }

  [[nodiscard]] auto resolve_preset() const -> LayoutPreset {
    LayoutPreset p;
    if (!preset.empty()) {
      p = layout_preset(preset);
    } else if (!arch_file.empty()) {
      p.name = fs::path(arch_file).stem().string();
      p.arch = load_architecture(read_text_file(arch_file));
      p.mode = LayoutMode::Shielded;
    } else {
      throw FormatError("one of --arch or --preset is required");
    }
    if (!arch_file.empty() && !preset.empty()) {
      p.arch = load_architecture(read_text_file(arch_file));
    }
    if (!layout.empty()) {
      p.mode = layout_from_string(layout);
    }
    return p;
  }

  [[nodiscard]] auto resolve_circuit() const -> std::pair<std::string, Circuit> {
    if (!code.empty() && !circuit_file.empty()) {
      throw FormatError("--code and --circuit are exclusive");
    }
    if (!code.empty()) {
      return {code, preparation_circuit(builtin_code(code))};
    }
    if (!circuit_file.empty()) {
      auto c = load_circuit(read_text_file(circuit_file));
      auto name = c.name.empty() ? fs::path(circuit_file).stem().string() : c.name;
      return {name, c};
    }
    throw FormatError("one of --code or --circuit is required");
  }
};

struct SolverOptions {
  std::string solver = default_solver_command();
  double timeout = 300.0;
  std::optional<int> s_start;
  std::optional<int> s_cap;
  std::string emit_smt;
  double refine = 0.0;

  void add_to(CLI::App& app) {
    app.add_option("--solver", solver, "Solver command, {file} for a path");
    app.add_option("--timeout", timeout, "Seconds per solver call");
    app.add_option("--s-start", s_start, "First stage count to try");
    app.add_option("--s-cap", s_cap, "Largest stage count to try");
    app.add_option("--emit-smt", emit_smt,
                   "Directory receiving the instances and solver outputs");
    app.add_option("--refine", refine,
                   "Seconds spent lowering transfer cost at the minimal "
                   "stage count, 0 disables");
  }

  [[nodiscard]] auto config() const -> SolveConfig {
    SolveConfig cfg;
    cfg.solver_command = solver;
    cfg.per_instance_timeout = timeout;
    cfg.s_start = s_start;
    cfg.s_cap = s_cap;
    if (!emit_smt.empty()) {
      cfg.cache_dir = emit_smt;
    }
    cfg.refine_transfers = refine > 0.0;
    cfg.refine_budget = refine;
    return cfg;
  }
};

auto cell_json(const TableCell& c) -> json {
  json j{{"code", c.code},
         {"layout", c.layout},
         {"num_cz", c.num_cz},
         {"status", status_name(c.status)},
         {"message", c.message}};
  if (c.status == CellStatus::Solved) {
    j["rydberg_stages"] = c.rydberg_stages;
    j["transfer_stages"] = c.transfer_stages;
    j["time_us"] = c.time_us;
    j["asp"] = c.asp;
    j["validated"] = c.validated;
    j["certificate"] = to_json(c.certificate);
    j["fidelity"] = to_json(c.fidelity);
  }
  return j;
}

auto exit_for(const TableCell& c) -> int {
  switch (c.status) {
  case CellStatus::Solved:
    return c.validated ? kOk : kInvalid;
  case CellStatus::NoSchedule:
    return kNoSchedule;
  case CellStatus::SolverFailure:
    return kSolverFailure;
  }
  return kSolverFailure;
}

} // namespace

auto layout_presets() -> std::vector<LayoutPreset> {
  return {
      {"no-shielding", no_shielding_architecture(), LayoutMode::NoShielding},
      {"bottom-storage", bottom_storage_architecture(), LayoutMode::Shielded},
      {"double-sided", double_sided_storage_architecture(),
       LayoutMode::Shielded},
  };
}

auto layout_preset(const std::string& name) -> LayoutPreset {
  for (auto& p : layout_presets()) {
    if (p.name == name) {
      return p;
    }
  }
  throw FormatError("unknown layout preset '" + name + "'");
}

auto run_cell(const std::string& code_name, const Circuit& circuit,
              const LayoutPreset& preset, SolveConfig cfg,
              std::optional<int> fixed_stages) -> TableCell {
  TableCell cell;
  cell.code = code_name;
  cell.layout = preset.name;
  cell.num_cz = circuit.num_gates();
  if (fixed_stages) {
    cfg.s_start = *fixed_stages;
    cfg.s_cap = *fixed_stages;
  }
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };
  try {
    auto result = find_minimal_schedule(preset.arch, circuit, preset.mode, cfg);
    cell.status = CellStatus::Solved;
    cell.schedule = std::move(result.schedule);
    cell.certificate = std::move(result.certificate);
  } catch (const NoScheduleError& e) {
    cell.status = CellStatus::NoSchedule;
    cell.message = e.what();
  } catch (const SolverError& e) {
    cell.status = CellStatus::SolverFailure;
    cell.message = e.what();
  }
  cell.solver_seconds = elapsed();
  if (cell.status != CellStatus::Solved) {
    return cell;
  }
  const auto report =
      check_schedule(preset.arch, circuit, preset.mode, cell.schedule);
  cell.validated = report.ok;
  cell.rydberg_stages = cell.schedule.num_execution_stages();
  cell.transfer_stages = cell.schedule.num_transfer_stages();
  cell.fidelity = estimate_asp(preset.arch, circuit, cell.schedule);
  cell.time_us = cell.fidelity.total_time_us;
  cell.asp = cell.fidelity.asp;
  return cell;
}

auto table_csv(const std::vector<TableCell>& cells) -> std::string {
  std::ostringstream ss;
  ss << "code,num_cz,layout,status,rydberg_stages,transfer_stages,time_us,asp,"
        "minimal,validated,solver_seconds\n";
  for (const auto& c : cells) {
    ss << c.code << ',' << c.num_cz << ',' << c.layout << ','
       << status_name(c.status) << ',';
    if (c.status == CellStatus::Solved) {
      ss << c.rydberg_stages << ',' << c.transfer_stages << ','
         << fixed(c.time_us, 1) << ',' << fixed(c.asp, 4) << ','
         << (c.certificate.minimal ? "yes" : "unproven") << ','
         << (c.validated ? "yes" : "no");
    } else {
      ss << ",,,,,";
    }
    ss << ',' << fixed(c.solver_seconds, 2) << '\n';
  }
  return ss.str();
}

auto table_pretty(const std::vector<TableCell>& cells) -> std::string {
  std::ostringstream ss;
  ss << std::left << std::setw(14) << "code" << std::setw(5) << "#CZ"
     << std::setw(16) << "layout" << std::right << std::setw(5) << "#R"
     << std::setw(5) << "#T" << std::setw(11) << "time[us]" << std::setw(8)
     << "ASP" << "  note\n";
  for (const auto& c : cells) {
    ss << std::left << std::setw(14) << c.code << std::setw(5) << c.num_cz
       << std::setw(16) << c.layout << std::right;
    if (c.status == CellStatus::Solved) {
      const char* mark = c.certificate.minimal ? "" : "*";
      ss << std::setw(5) << (std::to_string(c.rydberg_stages) + mark)
         << std::setw(5) << (std::to_string(c.transfer_stages) + mark)
         << std::setw(11) << fixed(c.time_us, 1) << std::setw(8)
         << fixed(c.asp, 3) << "  "
         << (c.certificate.minimal ? "minimal" : "minimality unproven");
      if (!c.validated) {
        ss << ", INVALID";
      }
    } else {
      ss << std::setw(5) << "-" << std::setw(5) << "-" << std::setw(11) << "-"
         << std::setw(8) << "-" << "  " << status_name(c.status);
    }
    ss << '\n';
  }
  return ss.str();
}

auto run(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) -> int {
  CLI::App app{"Minimal-stage scheduling of state preparation circuits on "
               "zoned neutral atom architectures"};
  app.require_subcommand(1);

  Inputs compile_in;
  SolverOptions compile_solver;
  std::string compile_out;
  std::string compile_report;
  std::optional<int> compile_stages;
  auto* compile = app.add_subcommand("compile", "Find a minimal schedule");
  compile_in.add_to(*compile);
  compile_solver.add_to(*compile);
  compile->add_option("--out", compile_out, "Schedule JSON output");
  compile->add_option("--report", compile_report,
                      "Certificate and fidelity JSON output");
  compile->add_option("--stages", compile_stages,
                      "Only try this stage count");

  Inputs validate_in;
  std::string validate_schedule;
  auto* validate = app.add_subcommand("validate", "Check a schedule");
  validate_in.add_to(*validate);
  validate->add_option("--schedule", validate_schedule, "Schedule JSON file")
      ->required();

  std::string table_codes;
  std::string table_layouts = "all";
  std::string table_csv_path;
  SolverOptions table_solver;
  auto* table = app.add_subcommand("table", "Compare layouts across codes");
  table->add_option("--codes", table_codes, "Comma-separated code names")
      ->required();
  table->add_option("--layouts", table_layouts,
                    "Comma-separated presets or 'all'");
  table->add_option("--budget", table_solver.timeout,
                    "Seconds per solver call");
  table->add_option("--solver", table_solver.solver, "Solver command");
  table->add_option("--s-cap", table_solver.s_cap, "Largest stage count");
  table->add_option("--csv", table_csv_path, "Also write the CSV here");
  table_solver.refine = 60.0;
  table->add_option("--refine", table_solver.refine,
                    "Seconds per cell spent lowering transfer cost");

  std::string export_dir = "data";
  auto* export_cmd =
      app.add_subcommand("export-data", "Write code and preset JSON files");
  export_cmd->add_option("--dir", export_dir, "Target directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kFormatError;
  }

  try {
    if (*compile) {
      const auto preset = compile_in.resolve_preset();
      const auto [name, circuit] = compile_in.resolve_circuit();
      const auto cell = run_cell(name, circuit, preset, compile_solver.config(),
                                 compile_stages);
      json report = cell_json(cell);
      if (cell.status != CellStatus::Solved) {
        err << status_name(cell.status) << ": " << cell.message << "\n";
        out << report.dump(2) << "\n";
        return exit_for(cell);
      }
      const auto schedule_text = to_json(cell.schedule).dump(2) + "\n";
      if (compile_out.empty()) {
        report["schedule"] = to_json(cell.schedule);
        out << report.dump(2) << "\n";
      } else {
        write_text_file(compile_out, schedule_text);
        const auto report_path =
            compile_report.empty() ? compile_out + ".report.json"
                                   : compile_report;
        write_text_file(report_path, report.dump(2) + "\n");
        out << table_pretty({cell});
      }
      return exit_for(cell);
    }
    if (*validate) {
      const auto preset = validate_in.resolve_preset();
      const auto [name, circuit] = validate_in.resolve_circuit();
      const auto schedule = load_schedule(read_text_file(validate_schedule));
      const auto report =
          check_schedule(preset.arch, circuit, preset.mode, schedule);
      out << to_json(report).dump(2) << "\n";
      for (const auto& v : report.violations) {
        err << "violation [" << v.rule << "] stage " << v.stage << ": "
            << v.message << "\n";
      }
      return report.ok ? kOk : kInvalid;
    }
    if (*table) {
      const auto codes = split_list(table_codes);
      if (codes.empty()) {
        err << "usage error: --codes needs at least one code\n";
        return kFormatError;
      }
      std::vector<LayoutPreset> presets;
      if (table_layouts == "all") {
        presets = layout_presets();
      } else {
        for (const auto& n : split_list(table_layouts)) {
          presets.push_back(layout_preset(n));
        }
      }
      std::vector<TableCell> cells;
      for (const auto& code : codes) {
        const auto circuit = preparation_circuit(builtin_code(code));
        for (const auto& p : presets) {
          cells.push_back(run_cell(code, circuit, p, table_solver.config()));
        }
      }
      const auto csv = table_csv(cells);
      out << csv << "\n" << table_pretty(cells);
      if (!table_csv_path.empty()) {
        write_text_file(table_csv_path, csv);
      }
      int code = kOk;
      for (const auto& c : cells) {
        if (c.status == CellStatus::SolverFailure) {
          return kSolverFailure;
        }
        if (c.status == CellStatus::Solved && !c.validated) {
          code = kInvalid;
        }
      }
      return code;
    }
    if (*export_cmd) {
      const fs::path root(export_dir);
      fs::create_directories(root / "codes");
      fs::create_directories(root / "arch");
      for (const auto& name : builtin_code_names()) {
        const auto code = builtin_code(name);
        auto j = code_to_json(code);
        j["circuit"] = to_json(preparation_circuit(code));
        write_text_file((root / "codes" / (name + ".json")).string(),
                        j.dump(2) + "\n");
      }
      for (const auto& p : layout_presets()) {
        auto j = to_json(p.arch);
        write_text_file((root / "arch" / (p.name + ".json")).string(),
                        j.dump(2) + "\n");
      }
      out << "wrote " << builtin_code_names().size() << " codes and "
          << layout_presets().size() << " architectures to " << root.string()
          << "\n";
      return kOk;
    }
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kFormatError;
  } catch (const InvariantError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kFormatError;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kSolverFailure;
  }
  return kOk;
}

} // namespace zoneprep::cli
