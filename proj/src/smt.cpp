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

#include "zoneprep/smt.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace zoneprep::smt {

auto Term::make(Op op, Sort sort, std::vector<Term> args) -> Term {
  Term t;
  t.node_ = std::make_shared<const Node>(Node{op, sort, 0, {}, std::move(args)});
  return t;
}

auto Term::constant(Sort sort, std::int64_t value) -> Term {
  Term t;
  t.node_ = std::make_shared<const Node>(Node{Op::Const, sort, value, {}, {}});
  return t;
}

auto Term::variable(Sort sort, std::string name) -> Term {
  Term t;
  t.node_ =
      std::make_shared<const Node>(Node{Op::Var, sort, 0, std::move(name), {}});
  return t;
}

auto int_const(std::int64_t v) -> Term { return Term::constant(Sort::Int, v); }
auto bool_const(bool v) -> Term { return Term::constant(Sort::Bool, v ? 1 : 0); }
auto int_var(std::string name) -> Term {
  return Term::variable(Sort::Int, std::move(name));
}
auto bool_var(std::string name) -> Term {
  return Term::variable(Sort::Bool, std::move(name));
}

auto lnot(const Term& a) -> Term { return Term::make(Op::Not, Sort::Bool, {a}); }

auto land(std::vector<Term> args) -> Term {
  if (args.empty()) {
    return bool_const(true);
  }
  if (args.size() == 1) {
    return args.front();
  }
  return Term::make(Op::And, Sort::Bool, std::move(args));
}

auto lor(std::vector<Term> args) -> Term {
  if (args.empty()) {
    return bool_const(false);
  }
  if (args.size() == 1) {
    return args.front();
  }
  return Term::make(Op::Or, Sort::Bool, std::move(args));
}

auto implies(const Term& a, const Term& b) -> Term {
  return Term::make(Op::Implies, Sort::Bool, {a, b});
}
auto iff(const Term& a, const Term& b) -> Term {
  return Term::make(Op::Iff, Sort::Bool, {a, b});
}
auto eq(const Term& a, const Term& b) -> Term {
  return Term::make(Op::Eq, Sort::Bool, {a, b});
}
auto ne(const Term& a, const Term& b) -> Term { return lnot(eq(a, b)); }
auto lt(const Term& a, const Term& b) -> Term {
  return Term::make(Op::Lt, Sort::Bool, {a, b});
}
auto le(const Term& a, const Term& b) -> Term {
  return Term::make(Op::Le, Sort::Bool, {a, b});
}
auto sub(const Term& a, const Term& b) -> Term {
  return Term::make(Op::Sub, Sort::Int, {a, b});
}
auto add(const Term& a, const Term& b) -> Term {
  return Term::make(Op::Add, Sort::Int, {a, b});
}
auto sum(std::vector<Term> args) -> Term {
  if (args.empty()) {
    return int_const(0);
  }
  if (args.size() == 1) {
    return args.front();
  }
  return Term::make(Op::Add, Sort::Int, std::move(args));
}
auto ite(const Term& cond, const Term& then, const Term& otherwise) -> Term {
  return Term::make(Op::Ite, then.sort(), {cond, then, otherwise});
}

void write_smtlib(std::ostream& os, const Term& t) {
  switch (t.op()) {
  case Op::Const:
    if (t.sort() == Sort::Bool) {
      os << (t.value() != 0 ? "true" : "false");
    } else if (t.value() < 0) {
      os << "(- " << -t.value() << ")";
    } else {
      os << t.value();
    }
    return;
  case Op::Var:
    os << t.name();
    return;
  default:
    break;
  }
  const char* head = "";
  switch (t.op()) {
  case Op::Not:
    head = "not";
    break;
  case Op::And:
    head = "and";
    break;
  case Op::Or:
    head = "or";
    break;
  case Op::Implies:
    head = "=>";
    break;
  case Op::Iff:
  case Op::Eq:
    head = "=";
    break;
  case Op::Lt:
    head = "<";
    break;
  case Op::Le:
    head = "<=";
    break;
  case Op::Add:
    head = "+";
    break;
  case Op::Sub:
    head = "-";
    break;
  case Op::Ite:
    head = "ite";
    break;
  default:
    break;
  }
  os << '(' << head;
  for (const auto& a : t.args()) {
    os << ' ';
    write_smtlib(os, a);
  }
  os << ')';
}

auto to_smtlib(const Term& t) -> std::string {
  std::ostringstream ss;
  write_smtlib(ss, t);
  return ss.str();
}

auto evaluate(const Term& t, const Assignment& env) -> std::int64_t {
  const auto& a = t.args();
  switch (t.op()) {
  case Op::Const:
    return t.value();
  case Op::Var: {
    const auto it = env.find(t.name());
    if (it == env.end()) {
      throw std::out_of_range("no value for variable '" + t.name() + "'");
    }
    return it->second;
  }
  case Op::Not:
    return evaluate(a[0], env) == 0 ? 1 : 0;
  case Op::And:
    for (const auto& x : a) {
      if (evaluate(x, env) == 0) {
        return 0;
      }
    }
    return 1;
  case Op::Or:
    for (const auto& x : a) {
      if (evaluate(x, env) != 0) {
        return 1;
      }
    }
    return 0;
  case Op::Implies:
    return (evaluate(a[0], env) == 0 || evaluate(a[1], env) != 0) ? 1 : 0;
  case Op::Iff:
    return ((evaluate(a[0], env) != 0) == (evaluate(a[1], env) != 0)) ? 1 : 0;
  case Op::Eq:
    return evaluate(a[0], env) == evaluate(a[1], env) ? 1 : 0;
  case Op::Lt:
    return evaluate(a[0], env) < evaluate(a[1], env) ? 1 : 0;
  case Op::Le:
    return evaluate(a[0], env) <= evaluate(a[1], env) ? 1 : 0;
  case Op::Add: {
    std::int64_t total = 0;
    for (const auto& x : a) {
      total += evaluate(x, env);
    }
    return total;
  }
  case Op::Sub:
    return evaluate(a[0], env) - evaluate(a[1], env);
  case Op::Ite:
    return evaluate(a[0], env) != 0 ? evaluate(a[1], env) : evaluate(a[2], env);
  }
  return 0;
}

namespace {
void collect(const Term& t, std::vector<std::string>& out,
             std::unordered_set<std::string>& seen) {
  if (t.op() == Op::Var) {
    if (seen.insert(t.name()).second) {
      out.push_back(t.name());
    }
    return;
  }
  for (const auto& a : t.args()) {
    collect(a, out, seen);
  }
}
} // namespace

void collect_variables(const Term& t, std::vector<std::string>& out) {
  std::unordered_set<std::string> seen(out.begin(), out.end());
  collect(t, out, seen);
}

} // namespace zoneprep::smt
