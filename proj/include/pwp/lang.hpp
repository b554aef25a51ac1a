#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pwp/expr.hpp"

namespace pwp {

struct Stmt;

// Sequential composition s1; s2; ...; sn (n >= 1).
struct Program {
  std::vector<Stmt> stmts;
  friend bool operator==(const Program&, const Program&) = default;
};

struct Skip {
  friend bool operator==(const Skip&, const Skip&) = default;
};

struct Assign {
  std::string target;
  Expr rhs;
  friend bool operator==(const Assign&, const Assign&) = default;
};

struct Branch {
  Expr value;
  Expr weight;
  friend bool operator==(const Branch&, const Branch&) = default;
};

// x := e1 @ p1, ..., en @ pn
struct ProbAssign {
  std::string target;
  std::vector<Branch> branches;
  friend bool operator==(const ProbAssign&, const ProbAssign&) = default;
};

// x := value @ weight for index in lo .. hi  (one branch per lo <= index < hi)
struct IndexedProbAssign {
  std::string target;
  Expr value;
  Expr weight;
  std::string index;
  Expr lo;
  Expr hi;
  friend bool operator==(const IndexedProbAssign&, const IndexedProbAssign&) = default;
};

// do count times body od
struct DoTimes {
  Expr count;
  Program body;
  friend bool operator==(const DoTimes&, const DoTimes&) = default;
};

struct Stmt {
  std::variant<Skip, Assign, ProbAssign, IndexedProbAssign, DoTimes> v;
  friend bool operator==(const Stmt&, const Stmt&) = default;
};

// Parses a program. Throws ParseError on syntax errors and StaticError when
// a loop count or branch range is closed but invalid (negative count, empty
// range). Counts and ranges with free variables are checked at run time.
Program parse(std::string_view text);

// Parses a single expression (the whole input must be consumed).
Expr parse_expr(std::string_view text);

std::string pretty(const Program& p);
std::string pretty(const Expr& e);

// The statically-known nonnegative count of a loop, evaluated in `env`.
// Throws StaticError for negative or non-integer counts.
std::int64_t loop_count(const DoTimes& loop, const Env& env);

}  // namespace pwp
