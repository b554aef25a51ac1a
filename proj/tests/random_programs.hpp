#pragma once

// Random expression and program generators shared by the property tests and
// the acceptance runner.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "pwp/lang.hpp"

namespace pwp::testgen {

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(xs.size()) - 1))];
  }

  // ---- syntax-level generators (round-trip) ----

  Expr literal() {
    switch (uniform(0, 6)) {
      case 0: return Expr::literal(Value(uniform(-9, 9)));
      case 1: return Expr::literal(Value(Integer("123456789012345678901234567890") * uniform(-3, 3)));
      case 2: return Expr::literal(Value(real(-10.0, 10.0)));
      case 3: return Expr::literal(Value(std::ldexp(real(0.5, 1.0), static_cast<int>(uniform(-300, 300)))));
      case 4: return Expr::literal(Value(static_cast<double>(uniform(-5, 5))));
      case 5: return Expr::literal(Value(Complex(0.0, real(0.0, 4.0))));
      default: return Expr::literal(Value(0.5));
    }
  }

  Expr syntax_expr(int depth) {
    static const std::vector<std::string> vars{"x", "y", "S", "N", "i", "x'", "f", "x0"};
    if (depth <= 0 || chance(0.25)) {
      switch (uniform(0, 3)) {
        case 0:
        case 1: return Expr::var(pick(vars));
        case 2: return literal();
        default: return chance(0.2) ? Expr::pi() : literal();
      }
    }
    const int d = depth - 1;
    switch (uniform(0, 8)) {
      case 0: return Expr::neg(syntax_expr(d));
      case 1:
      case 2:
      case 3: {
        static const std::vector<BinaryOp> ops{BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div,
                                               BinaryOp::Pow, BinaryOp::Eq,  BinaryOp::Ne,  BinaryOp::Lt,
                                               BinaryOp::Le,  BinaryOp::Gt,  BinaryOp::Ge};
        return Expr::binary(pick(ops), syntax_expr(d), syntax_expr(d));
      }
      case 4: {
        Expr fn = chance(0.5) ? Expr::var(pick(vars)) : syntax_expr(d);
        return Expr::apply(std::move(fn), syntax_expr(d));
      }
      case 5: return Expr::lambda(pick(vars), syntax_expr(d), syntax_expr(d), syntax_expr(d));
      case 6: return Expr::sum(pick(vars), syntax_expr(d), syntax_expr(d), syntax_expr(d));
      case 7: {
        static const std::vector<BuiltinFn> unary{BuiltinFn::Mean, BuiltinFn::Norm2, BuiltinFn::Sqrt};
        return Expr::builtin(pick(unary), {syntax_expr(d)});
      }
      default: return Expr::builtin(BuiltinFn::Classical, {syntax_expr(d), syntax_expr(d)});
    }
  }

  // An expression that certainly has a free variable, so that static checks
  // on counts and ranges are deferred to run time.
  Expr open_expr(int depth) {
    return Expr::binary(BinaryOp::Add, Expr::var(pick(std::vector<std::string>{"n", "C", "N"})),
                        syntax_expr(depth));
  }

  Stmt syntax_stmt(int depth) {
    static const std::vector<std::string> targets{"x", "S", "coin", "r'"};
    switch (uniform(0, depth > 0 ? 5 : 4)) {
      case 0: return {Skip{}};
      case 1:
      case 2: return {Assign{pick(targets), syntax_expr(3)}};
      case 3: {
        ProbAssign pa{pick(targets), {}};
        const auto n = uniform(1, 3);
        for (std::int64_t k = 0; k < n; ++k) pa.branches.push_back({syntax_expr(2), syntax_expr(2)});
        return {pa};
      }
      case 4: {
        Expr hi = chance(0.5) ? Expr::literal(Value(uniform(1, 9))) : open_expr(2);
        return {IndexedProbAssign{pick(targets), syntax_expr(2), syntax_expr(2), "i", Expr::literal(Value(0)),
                                  std::move(hi)}};
      }
      default: {
        Expr count = chance(0.5) ? Expr::literal(Value(uniform(0, 5))) : open_expr(2);
        return {DoTimes{std::move(count), syntax_program(depth - 1)}};
      }
    }
  }

  Program syntax_program(int depth) {
    Program p;
    const auto n = uniform(1, 4);
    for (std::int64_t k = 0; k < n; ++k) p.stmts.push_back(syntax_stmt(depth));
    return p;
  }

  // ---- semantic generators (small Grover-like programs that always run) ----

  struct Case {
    Program program;
    Env env;
    std::vector<Expr> posts;       // arbitrary nonnegative posts
    std::vector<Expr> predicates;  // {0,1}-valued posts
  };

  Case semantic_case(std::int64_t max_n = 8, std::int64_t max_c = 4) {
    const std::int64_t n = uniform(1, max_n);
    const std::int64_t x0 = uniform(0, n - 1);
    Env env{{"N", Value(n)}, {"x0", Value(x0)}, {"C", Value(uniform(0, max_c))}, {"r", Value(0.25)}};
    env.set("f", eval(parse_expr("(lam i | 0 <= i < N . i = x0)"), env));
    env.set("S", eval(parse_expr("(lam i | 0 <= i < N . 1 / sqrt(N))"), env));

    int measures = 0;
    Program p;
    const auto len = uniform(1, 5);
    for (std::int64_t k = 0; k < len; ++k) {
      const auto kind = uniform(0, 9);
      if (kind <= 1) {
        Program body;
        const auto m = uniform(1, 2);
        for (std::int64_t j = 0; j < m; ++j) body.stmts.push_back(loop_stmt(n));
        Expr count = chance(0.3) ? Expr::var("C") : Expr::literal(Value(uniform(0, max_c)));
        p.stmts.push_back({DoTimes{std::move(count), std::move(body)}});
      } else if (kind == 2 && measures < 2) {
        ++measures;
        p.stmts.push_back(parse("S := classical(i, N) @ norm2(S(i)) for i in 0 .. N").stmts[0]);
      } else if (kind == 3) {
        p.stmts.push_back(parse("S := (lam i | 0 <= i < N . 1 / sqrt(N))").stmts[0]);
      } else if (kind == 4) {
        const double w = std::round(real(0.0, 1.0) * 64) / 64;
        p.stmts.push_back(parse("r := r @ " + fmt(w) + ", 1 - r @ 1 - " + fmt(w)).stmts[0]);
      } else if (kind == 5) {
        const double w = std::round(real(0.0, 1.0) * 64) / 64;
        p.stmts.push_back(parse("S := " + oracle_rhs(n) + " @ " + fmt(w) + ", " + diffusion_rhs() + " @ 1 - " +
                                fmt(w))
                              .stmts[0]);
      } else {
        p.stmts.push_back(loop_stmt(n));
      }
    }

    const std::string j = std::to_string(uniform(0, n - 1));
    Case c{std::move(p), std::move(env), {}, {}};
    for (const char* src : {"norm2(S(x0))", "r", "(r + norm2(S(x0))) / 2", "norm2(mean(S))"}) {
      c.posts.push_back(parse_expr(src));
    }
    c.posts.push_back(parse_expr("norm2(S(" + j + ")) * 3 + r"));
    for (const std::string& src : std::vector<std::string>{"S = classical(x0, N)", "S = classical(" + j + ", N)", "r > 0.5", "r <= 0.25"}) {
      c.predicates.push_back(parse_expr(src));
    }
    return c;
  }

 private:
  static std::string fmt(double w) { return pretty(Expr::literal(Value(w))); }

  std::string oracle_rhs(std::int64_t n) {
    if (chance(0.5)) return "(lam i | 0 <= i < N . S(i) - 2 * f(i) * S(i))";
    return "(lam i | 0 <= i < N . S(i) - 2 * (i = " + std::to_string(uniform(0, n - 1)) + ") * S(i))";
  }
  static std::string diffusion_rhs() { return "(lam i | 0 <= i < N . 2 * mean(S) - S(i))"; }

  Stmt loop_stmt(std::int64_t n) {
    switch (uniform(0, 3)) {
      case 0: return parse("S := " + oracle_rhs(n)).stmts[0];
      case 1: return parse("S := " + diffusion_rhs()).stmts[0];
      case 2: return parse("r := r / 2 + norm2(S(" + std::to_string(uniform(0, n - 1)) + ")) / 2").stmts[0];
      default: return parse("S := " + oracle_rhs(n)).stmts[0];
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace pwp::testgen
