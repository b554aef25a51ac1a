#include <cmath>
#include <stdexcept>

#include "pwp/format.hpp"
#include "pwp/lang.hpp"

namespace pwp {

namespace {

// Binding strength; a subexpression is parenthesized when its level is below
// the level its position requires.
enum Level : int { kCompare = 0, kAdd = 1, kMul = 2, kUnary = 3, kPower = 4, kPostfix = 5, kPrimary = 6 };

int level_of(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add:
    case BinaryOp::Sub: return kAdd;
    case BinaryOp::Mul:
    case BinaryOp::Div: return kMul;
    case BinaryOp::Pow: return kPower;
    default: return kCompare;
  }
}

std::string literal_text(const Value& v) {
  if (v.is_int()) {
    const std::string s = v.as_int().get_str();
    return sgn(v.as_int()) < 0 ? "(" + s + ")" : s;
  }
  if (v.is_real()) {
    const double d = v.as_real();
    if (!std::isfinite(d)) throw std::invalid_argument("cannot print non-finite literal");
    if (std::signbit(d)) return "(-" + format_exact(-d) + ")";
    return format_exact(d);
  }
  if (v.is_complex() && v.as_complex().real() == 0.0 && std::isfinite(v.as_complex().imag())) {
    const double im = v.as_complex().imag();
    if (std::signbit(im)) return "(-" + format_exact(-im) + "j)";
    return format_exact(im) + "j";
  }
  throw std::invalid_argument("literal " + to_string(v) + " has no source form");
}

class Printer {
 public:
  std::string expr(const Expr& e, int required) {
    auto [text, level] = std::visit([&](const auto& n) { return visit(n); }, e.node().v);
    return level < required ? "(" + text + ")" : text;
  }

  void program(const Program& p, int indent) {
    for (std::size_t i = 0; i < p.stmts.size(); ++i) {
      stmt(p.stmts[i], indent);
      if (i + 1 < p.stmts.size()) out_ += ';';
      out_ += '\n';
    }
  }

  std::string take() { return std::move(out_); }

 private:
  using Printed = std::pair<std::string, int>;

  Printed visit(const node::Literal& n) { return {literal_text(n.value), kPrimary}; }
  Printed visit(const node::Var& n) { return {n.name, kPrimary}; }
  Printed visit(const node::Pi&) { return {"pi", kPrimary}; }
  Printed visit(const node::Neg& n) {
    // "-(1)" keeps the negation distinct from the literal -1.
    if (std::holds_alternative<node::Literal>(n.operand.node().v)) {
      const std::string text = expr(n.operand, kPrimary);
      return {text.front() == '(' ? "-" + text : "-(" + text + ")", kUnary};
    }
    return {"-" + expr(n.operand, kUnary), kUnary};
  }
  Printed visit(const node::Binary& n) {
    const int lvl = level_of(n.op);
    int left = lvl;
    int right = lvl + 1;
    if (n.op == BinaryOp::Pow) {
      left = kPostfix;
      right = kUnary;
    } else if (lvl == kCompare) {
      left = right = kAdd;
    }
    return {expr(n.lhs, left) + " " + std::string(symbol(n.op)) + " " + expr(n.rhs, right), lvl};
  }
  Printed visit(const node::Apply& n) {
    return {expr(n.fn, kPostfix) + "(" + expr(n.arg, kCompare) + ")", kPostfix};
  }
  Printed visit(const node::Lambda& n) {
    return {"(lam " + n.param + " | " + expr(n.lo, kAdd) + " <= " + n.param + " < " + expr(n.hi, kAdd) +
                " . " + expr(n.body, kCompare) + ")",
            kPrimary};
  }
  Printed visit(const node::Sum& n) {
    return {"sum(" + n.param + ", " + expr(n.lo, kCompare) + ", " + expr(n.hi, kCompare) + ", " +
                expr(n.body, kCompare) + ")",
            kPrimary};
  }
  Printed visit(const node::Builtin& n) {
    std::string s(name(n.fn));
    s += '(';
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      if (i) s += ", ";
      s += expr(n.args[i], kCompare);
    }
    return {s + ")", kPrimary};
  }

  void stmt(const Stmt& s, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    out_ += pad;
    if (std::holds_alternative<Skip>(s.v)) {
      out_ += "skip";
    } else if (const auto* a = std::get_if<Assign>(&s.v)) {
      out_ += a->target + " := " + expr(a->rhs, kCompare);
    } else if (const auto* pa = std::get_if<ProbAssign>(&s.v)) {
      out_ += pa->target + " :=";
      for (std::size_t i = 0; i < pa->branches.size(); ++i) {
        out_ += i ? ", " : " ";
        out_ += expr(pa->branches[i].value, kCompare) + " @ " + expr(pa->branches[i].weight, kCompare);
      }
    } else if (const auto* ip = std::get_if<IndexedProbAssign>(&s.v)) {
      out_ += ip->target + " := " + expr(ip->value, kCompare) + " @ " + expr(ip->weight, kCompare) +
              " for " + ip->index + " in " + expr(ip->lo, kCompare) + " .. " + expr(ip->hi, kCompare);
    } else {
      const auto& loop = std::get<DoTimes>(s.v);
      out_ += "do " + expr(loop.count, kCompare) + " times\n";
      program(loop.body, indent + 1);
      out_ += pad + "od";
    }
  }

  std::string out_;
};

}  // namespace

std::string pretty(const Program& p) {
  Printer pr;
  pr.program(p, 0);
  std::string s = pr.take();
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::string pretty(const Expr& e) {
  Printer pr;
  return pr.expr(e, kCompare);
}

}  // namespace pwp
