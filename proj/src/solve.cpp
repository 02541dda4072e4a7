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

#include "zoneprep/solve.hpp"

#include "zoneprep/validate.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <filesystem>
#include <poll.h>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace zoneprep {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// ---- s-expressions -------------------------------------------------------

struct Sexp {
  std::string atom;
  std::vector<Sexp> list;
  bool is_list = false;
};

class SexpReader {
public:
  explicit SexpReader(std::string_view text) : text_(text) {}

  auto at_end() -> bool {
    skip();
    return pos_ >= text_.size();
  }

  auto read() -> Sexp {
    skip();
    if (pos_ >= text_.size()) {
      throw SolverError("unexpected end of solver output");
    }
    if (text_[pos_] == '(') {
      ++pos_;
      Sexp out;
      out.is_list = true;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) {
          throw SolverError("unbalanced parenthesis in solver output");
        }
        if (text_[pos_] == ')') {
          ++pos_;
          return out;
        }
        out.list.push_back(read());
      }
    }
    if (text_[pos_] == ')') {
      throw SolverError("unexpected ')' in solver output");
    }
    Sexp out;
    if (text_[pos_] == '"') {
      const auto end = text_.find('"', pos_ + 1);
      if (end == std::string_view::npos) {
        throw SolverError("unterminated string in solver output");
      }
      out.atom = std::string(text_.substr(pos_, end + 1 - pos_));
      pos_ = end + 1;
      return out;
    }
    if (text_[pos_] == '|') {
      const auto end = text_.find('|', pos_ + 1);
      if (end == std::string_view::npos) {
        throw SolverError("unterminated symbol in solver output");
      }
      out.atom = std::string(text_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
      return out;
    }
    const auto start = pos_;
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(
                                      text_[pos_])) == 0 &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    out.atom = std::string(text_.substr(start, pos_ - start));
    return out;
  }

private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') {
          ++pos_;
        }
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

auto value_of(const Sexp& e) -> std::int64_t {
  if (!e.is_list) {
    if (e.atom == "true") {
      return 1;
    }
    if (e.atom == "false") {
      return 0;
    }
    try {
      std::size_t used = 0;
      const auto v = std::stoll(e.atom, &used);
      if (used == e.atom.size()) {
        return v;
      }
    } catch (const std::exception&) {
    }
    throw SolverError("unsupported model value '" + e.atom + "'");
  }
  if (e.list.size() == 2 && !e.list[0].is_list && e.list[0].atom == "-") {
    return -value_of(e.list[1]);
  }
  throw SolverError("unsupported model value expression");
}

void read_model(const Sexp& model, smt::Assignment& out) {
  if (!model.is_list) {
    throw SolverError("model is not a list");
  }
  auto entries = model.list.begin();
  if (entries != model.list.end() && !entries->is_list &&
      entries->atom == "model") {
    ++entries;
  }
  for (; entries != model.list.end(); ++entries) {
    const auto& def = *entries;
    if (!def.is_list || def.list.size() != 5 || def.list[0].atom != "define-fun") {
      throw SolverError("unexpected model entry");
    }
    if (!def.list[2].is_list || !def.list[2].list.empty()) {
      continue;
    }
    out[def.list[1].atom] = value_of(def.list[4]);
  }
}

// ---- process -------------------------------------------------------------

auto split_command(const std::string& cmd) -> std::vector<std::string> {
  std::istringstream ss(cmd);
  std::vector<std::string> out;
  std::string word;
  while (ss >> word) {
    out.push_back(word);
  }
  return out;
}

struct ProcessResult {
  std::string output;
  int status = 0;
  bool timed_out = false;
  bool exec_failed = false;
};

auto run_process(std::vector<std::string> argv, const std::string& stdin_path,
                 double timeout_s) -> ProcessResult {
  if (argv.empty()) {
    throw SolverError("empty solver command");
  }
  int out_pipe[2];
  if (pipe(out_pipe) != 0) {
    throw SolverError(std::string("pipe: ") + std::strerror(errno));
  }
  const pid_t pid = fork();
  if (pid < 0) {
    close(out_pipe[0]);
    close(out_pipe[1]);
    throw SolverError(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    setpgid(0, 0);
    const int in = stdin_path.empty() ? open("/dev/null", O_RDONLY)
                                      : open(stdin_path.c_str(), O_RDONLY);
    if (in >= 0) {
      dup2(in, STDIN_FILENO);
      close(in);
    }
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(out_pipe[1], STDERR_FILENO);
    close(out_pipe[0]);
    close(out_pipe[1]);
    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (auto& a : argv) {
      args.push_back(a.data());
    }
    args.push_back(nullptr);
    execvp(args[0], args.data());
    _exit(127);
  }
  close(out_pipe[1]);

  ProcessResult result;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(timeout_s));
  char buf[65536];
  for (;;) {
    int wait_ms = -1;
    if (timeout_s > 0) {
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                            deadline - Clock::now())
                            .count();
      if (left <= 0) {
        result.timed_out = true;
        break;
      }
      wait_ms = static_cast<int>(std::min<long long>(left, 1000));
    }
    pollfd pfd{out_pipe[0], POLLIN, 0};
    const int ready = poll(&pfd, 1, wait_ms);
    if (ready < 0 && errno != EINTR) {
      break;
    }
    if (ready <= 0) {
      continue;
    }
    const auto got = read(out_pipe[0], buf, sizeof buf);
    if (got < 0 && errno == EINTR) {
      continue;
    }
    if (got <= 0) {
      break;
    }
    result.output.append(buf, static_cast<std::size_t>(got));
  }
  close(out_pipe[0]);
  if (result.timed_out) {
    kill(-pid, SIGKILL);
    kill(pid, SIGKILL);
  }
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  result.status = status;
  result.exec_failed = WIFEXITED(status) && WEXITSTATUS(status) == 127 &&
                       result.output.empty();
  return result;
}

auto replace_placeholder(std::vector<std::string>& argv,
                         const std::string& path) -> bool {
  bool found = false;
  for (auto& a : argv) {
    const auto at = a.find("{file}");
    if (at != std::string::npos) {
      a.replace(at, 6, path);
      found = true;
    }
  }
  return found;
}

auto ceil_div(int a, int b) -> int { return (a + b - 1) / b; }

} // namespace

auto to_string(VerdictKind kind) -> std::string_view {
  switch (kind) {
  case VerdictKind::Sat:
    return "sat";
  case VerdictKind::Unsat:
    return "unsat";
  case VerdictKind::Unknown:
    return "unknown";
  }
  return "unknown";
}

auto to_string(UnknownReason reason) -> std::string_view {
  switch (reason) {
  case UnknownReason::None:
    return "none";
  case UnknownReason::Timeout:
    return "timeout";
  case UnknownReason::SolverUnknown:
    return "solver-unknown";
  case UnknownReason::SolverError:
    return "solver-error";
  }
  return "none";
}

auto default_solver_command() -> std::string {
  if (const char* env = std::getenv(kSolverEnvVar); env != nullptr && *env) {
    return env;
  }
  return "z3 -smt2 -in";
}

auto to_smtlib(const SmtInstance& inst) -> std::string {
  std::ostringstream os;
  os << "; zoneprep instance: circuit '" << inst.circuit.name << "', "
     << inst.circuit.num_qubits << " qubits, " << inst.circuit.num_gates()
     << " gates, " << inst.s << " stages, " << to_string(inst.layout) << "\n";
  os << "(set-option :produce-models true)\n";
  os << "(set-logic QF_LIA)\n";
  for (const auto& d : inst.declarations) {
    os << "(declare-fun " << d.name << " () "
       << (d.sort == smt::Sort::Bool ? "Bool" : "Int") << ")\n";
  }
  for (const auto& a : inst.assertions) {
    os << "(assert ";
    smt::write_smtlib(os, a.formula);
    os << ")\n";
  }
  os << "(check-sat)\n(get-model)\n(exit)\n";
  return os.str();
}

auto content_hash(std::string_view text) -> std::string {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

auto parse_solver_output(std::string_view output) -> SolverVerdict {
  SexpReader reader(output);
  SolverVerdict verdict;
  if (reader.at_end()) {
    throw SolverError("solver produced no output");
  }
  const auto status = reader.read();
  if (status.is_list || (status.atom != "sat" && status.atom != "unsat" &&
                         status.atom != "unknown")) {
    throw SolverError("unexpected solver output: " + std::string(output));
  }
  if (status.atom == "unsat") {
    verdict.kind = VerdictKind::Unsat;
    return verdict;
  }
  if (status.atom == "unknown") {
    verdict.kind = VerdictKind::Unknown;
    verdict.reason = UnknownReason::SolverUnknown;
    verdict.message = std::string(output);
    return verdict;
  }
  verdict.kind = VerdictKind::Sat;
  if (reader.at_end()) {
    throw SolverError("sat without a model");
  }
  read_model(reader.read(), verdict.model);
  return verdict;
}

void complete_model(const SmtInstance& inst, smt::Assignment& model) {
  for (const auto& d : inst.declarations) {
    model.try_emplace(d.name, 0);
  }
}

auto solve_instance(const SmtInstance& inst, const SolveConfig& cfg)
    -> SolverVerdict {
  const auto text = to_smtlib(inst);
  const auto key = content_hash(cfg.solver_command + "\n" + text);

  fs::path work;
  bool temporary = false;
  if (cfg.cache_dir) {
    work = fs::path(*cfg.cache_dir);
    fs::create_directories(work);
    const auto cached = work / (key + ".out");
    if (fs::exists(cached)) {
      auto verdict = parse_solver_output(read_text_file(cached.string()));
      if (verdict.kind == VerdictKind::Sat) {
        complete_model(inst, verdict.model);
      }
      verdict.from_cache = true;
      return verdict;
    }
  } else {
    work = fs::temp_directory_path();
    temporary = true;
  }
  const auto smt_path =
      work / (key + (temporary ? "-" + std::to_string(getpid()) : "") + ".smt2");
  write_text_file(smt_path.string(), text);

  const auto start = Clock::now();
  ProcessResult proc;
  try {
    auto argv = split_command(cfg.solver_command);
    const bool by_file = replace_placeholder(argv, smt_path.string());
    proc = run_process(argv, by_file ? std::string() : smt_path.string(),
                       cfg.per_instance_timeout);
  } catch (const SolverError& e) {
    if (temporary) {
      fs::remove(smt_path);
    }
    SolverVerdict failed;
    failed.reason = UnknownReason::SolverError;
    failed.message = e.what();
    return failed;
  } catch (...) {
    if (temporary) {
      fs::remove(smt_path);
    }
    throw;
  }
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  if (temporary) {
    fs::remove(smt_path);
  }

  SolverVerdict verdict;
  if (proc.timed_out) {
    verdict.kind = VerdictKind::Unknown;
    verdict.reason = UnknownReason::Timeout;
    verdict.seconds = seconds;
    return verdict;
  }
  if (proc.exec_failed) {
    verdict.kind = VerdictKind::Unknown;
    verdict.reason = UnknownReason::SolverError;
    verdict.message = "cannot run solver command '" + cfg.solver_command + "'";
    verdict.seconds = seconds;
    return verdict;
  }
  try {
    verdict = parse_solver_output(proc.output);
  } catch (const SolverError& e) {
    verdict = SolverVerdict{};
    verdict.kind = VerdictKind::Unknown;
    verdict.reason = UnknownReason::SolverError;
    verdict.message = std::string(e.what()) + "\n" + proc.output;
  }
  verdict.seconds = seconds;
  if (verdict.kind == VerdictKind::Sat) {
    complete_model(inst, verdict.model);
  }
  if (cfg.cache_dir && verdict.kind != VerdictKind::Unknown) {
    write_text_file((work / (key + ".out")).string(), proc.output);
  }
  return verdict;
}

auto to_json(const MinimalityCertificate& cert) -> nlohmann::json {
  nlohmann::json attempts = nlohmann::json::array();
  for (const auto& a : cert.attempts) {
    nlohmann::json j{{"s", a.s},
                     {"verdict", std::string(to_string(a.kind))},
                     {"seconds", a.seconds}};
    if (a.kind == VerdictKind::Unknown) {
      j["reason"] = std::string(to_string(a.reason));
    }
    attempts.push_back(j);
  }
  nlohmann::json out{
      {"s", cert.s},
      {"minimal", cert.minimal},
      {"status", cert.minimal ? "minimal" : "feasible, minimality unproven"},
      {"lower_bound", cert.lower_bound},
      {"bound_argument", cert.bound_argument},
      {"started_above_bound", cert.started_above_bound},
      {"attempts", attempts}};
  if (cert.final_cost) {
    out["transfer_cost"] = {{"initial", *cert.initial_cost},
                            {"final", *cert.final_cost},
                            {"optimal", cert.cost_optimal}};
  }
  return out;
}

auto stage_lower_bound(const Architecture& arch, const Circuit& circuit)
    -> LowerBound {
  LowerBound out;
  const int g = circuit.num_gates();
  if (g == 0) {
    out.argument = "no gates";
    return out;
  }
  std::vector<int> degree(static_cast<std::size_t>(circuit.num_qubits), 0);
  for (const auto& [a, b] : circuit.cz_gates) {
    ++degree[static_cast<std::size_t>(a)];
    ++degree[static_cast<std::size_t>(b)];
  }
  const int max_degree = *std::max_element(degree.begin(), degree.end());
  const int traps = (2 * arch.h_max + 1) * (2 * arch.v_max + 1);
  const int sites = (arch.x_max + 1) * (arch.e_max - arch.e_min + 1);
  const int capacity = std::max(1, std::min(circuit.num_qubits / 2,
                                            sites * (traps / 2)));
  const int by_parallelism = ceil_div(g, capacity);
  out.s = std::max({1, max_degree, by_parallelism});
  std::ostringstream ss;
  ss << "max(qubit degree " << max_degree << ", ceil(" << g << " gates / "
     << capacity << " per stage) = " << by_parallelism << ")";
  out.argument = ss.str();
  return out;
}

namespace {

auto checked_schedule(const SmtInstance& inst, const smt::Assignment& model)
    -> Schedule {
  auto schedule = extract_schedule(inst, model);
  const auto report =
      check_schedule(inst.arch, inst.circuit, inst.layout, schedule);
  if (!report.ok) {
    throw std::logic_error("solver schedule rejected by the validator: " +
                           report.violations.front().rule + ": " +
                           report.violations.front().message);
  }
  return schedule;
}

/// Descends on the transfer cost with one tightened query per step.
void refine(const SmtInstance& base, const smt::Assignment& first,
            const SolveConfig& cfg, MinimalResult& result) {
  auto& cert = result.certificate;
  const auto cost =
      transfer_cost(base, transfer_weights(base.arch, base.circuit));
  auto best = smt::evaluate(cost, first);
  cert.initial_cost = best;
  cert.final_cost = best;
  const auto start = std::chrono::steady_clock::now();
  while (best > 0) {
    const std::chrono::duration<double> used =
        std::chrono::steady_clock::now() - start;
    const double left = cfg.refine_budget - used.count();
    if (left <= 0.0) {
      return;
    }
    auto inst = base;
    inst.add(rule::kTransferCost, smt::le(cost, best - 1));
    auto step = cfg;
    step.per_instance_timeout = cfg.per_instance_timeout > 0.0
                                    ? std::min(cfg.per_instance_timeout, left)
                                    : left;
    const auto verdict = solve_instance(inst, step);
    if (verdict.kind == VerdictKind::Unsat) {
      break;
    }
    if (verdict.kind != VerdictKind::Sat) {
      return;
    }
    result.schedule = checked_schedule(inst, verdict.model);
    best = smt::evaluate(cost, verdict.model);
    cert.final_cost = best;
  }
  cert.cost_optimal = true;
}

} // namespace

auto find_minimal_schedule(const Architecture& arch, const Circuit& circuit,
                           LayoutMode layout, const SolveConfig& cfg)
    -> MinimalResult {
  arch.validate();
  circuit.validate();
  MinimalResult result;
  auto& cert = result.certificate;
  const auto bound = stage_lower_bound(arch, circuit);
  cert.lower_bound = bound.s;
  cert.bound_argument = bound.argument;
  if (circuit.num_gates() == 0) {
    cert.minimal = true;
    return result;
  }

  const int s_start = std::max(1, cfg.s_start.value_or(bound.s));
  const int s_cap = cfg.s_cap.value_or(arch.num_stages_cap);
  cert.started_above_bound = s_start > bound.s;
  bool all_unsat = !cert.started_above_bound;
  for (int s = s_start; s <= s_cap; ++s) {
    const auto inst = build_instance(arch, circuit, s, layout);
    const auto verdict = solve_instance(inst, cfg);
    cert.attempts.push_back({s, verdict.kind, verdict.reason, verdict.seconds});
    if (verdict.kind == VerdictKind::Unknown &&
        verdict.reason == UnknownReason::SolverError) {
      throw SolverError(verdict.message);
    }
    if (verdict.kind == VerdictKind::Unsat) {
      continue;
    }
    if (verdict.kind == VerdictKind::Unknown) {
      all_unsat = false;
      continue;
    }
    result.schedule = checked_schedule(inst, verdict.model);
    cert.s = s;
    cert.minimal = all_unsat;
    if (cfg.refine_transfers) {
      refine(inst, verdict.model, cfg, result);
    }
    return result;
  }
  const auto undecided = std::count_if(
      cert.attempts.begin(), cert.attempts.end(),
      [](const auto& a) { return a.kind == VerdictKind::Unknown; });
  std::string msg =
      "no schedule with at most " + std::to_string(s_cap) + " stages";
  if (undecided > 0) {
    msg += " (" + std::to_string(undecided) + " of " +
           std::to_string(cert.attempts.size()) +
           " stage counts undecided within the time limit)";
  }
  throw NoScheduleError(msg);
}

} // namespace zoneprep
