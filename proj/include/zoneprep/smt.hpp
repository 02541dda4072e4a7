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

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

/// A tiny quantifier-free LIA term language: enough to state the scheduling
/// constraints, print them as SMT-LIB2 and evaluate them under a model.
namespace zoneprep::smt {

enum class Sort : std::uint8_t { Bool, Int };

enum class Op : std::uint8_t {
  Const,
  Var,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Eq,
  Lt,
  Le,
  Add,
  Sub,
  Ite,
};

class Term {
public:
  Term() = default;

  [[nodiscard]] auto op() const -> Op { return node_->op; }
  [[nodiscard]] auto sort() const -> Sort { return node_->sort; }
  [[nodiscard]] auto value() const -> std::int64_t { return node_->value; }
  [[nodiscard]] auto name() const -> const std::string& { return node_->name; }
  [[nodiscard]] auto args() const -> const std::vector<Term>& {
    return node_->args;
  }
  [[nodiscard]] auto valid() const -> bool { return node_ != nullptr; }

  static auto make(Op op, Sort sort, std::vector<Term> args) -> Term;
  static auto constant(Sort sort, std::int64_t value) -> Term;
  static auto variable(Sort sort, std::string name) -> Term;

private:
  struct Node {
    Op op;
    Sort sort;
    std::int64_t value = 0;
    std::string name;
    std::vector<Term> args;
  };
  std::shared_ptr<const Node> node_;
};

[[nodiscard]] auto int_const(std::int64_t v) -> Term;
[[nodiscard]] auto bool_const(bool v) -> Term;
[[nodiscard]] auto int_var(std::string name) -> Term;
[[nodiscard]] auto bool_var(std::string name) -> Term;

[[nodiscard]] auto lnot(const Term& a) -> Term;
[[nodiscard]] auto land(std::vector<Term> args) -> Term;
[[nodiscard]] auto lor(std::vector<Term> args) -> Term;
[[nodiscard]] auto implies(const Term& a, const Term& b) -> Term;
[[nodiscard]] auto iff(const Term& a, const Term& b) -> Term;
[[nodiscard]] auto eq(const Term& a, const Term& b) -> Term;
[[nodiscard]] auto ne(const Term& a, const Term& b) -> Term;
[[nodiscard]] auto lt(const Term& a, const Term& b) -> Term;
[[nodiscard]] auto le(const Term& a, const Term& b) -> Term;
[[nodiscard]] auto sub(const Term& a, const Term& b) -> Term;
[[nodiscard]] auto add(const Term& a, const Term& b) -> Term;
[[nodiscard]] auto sum(std::vector<Term> args) -> Term;
/// If-then-else over integer branches.
[[nodiscard]] auto ite(const Term& cond, const Term& then, const Term& otherwise)
    -> Term;

inline auto eq(const Term& a, std::int64_t b) -> Term {
  return eq(a, int_const(b));
}
inline auto lt(const Term& a, std::int64_t b) -> Term {
  return lt(a, int_const(b));
}
inline auto le(const Term& a, std::int64_t b) -> Term {
  return le(a, int_const(b));
}
inline auto le(std::int64_t a, const Term& b) -> Term {
  return le(int_const(a), b);
}

void write_smtlib(std::ostream& os, const Term& t);
[[nodiscard]] auto to_smtlib(const Term& t) -> std::string;

/// Values by variable name; booleans are 0/1.
using Assignment = std::unordered_map<std::string, std::int64_t>;

/// Throws std::out_of_range when a variable has no value.
[[nodiscard]] auto evaluate(const Term& t, const Assignment& env)
    -> std::int64_t;

/// Collects variable names in first-occurrence order.
void collect_variables(const Term& t, std::vector<std::string>& out);

} // namespace zoneprep::smt
