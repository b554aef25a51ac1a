#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "pwp/errors.hpp"
#include "pwp/lang.hpp"

namespace pwp {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) out += ", ";
    out += expected[i];
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::string found,
                       std::vector<std::string> expected)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
            ": unexpected " + found + (expected.empty() ? "" : "; expected " + join_expected(expected))),
      line_(line),
      column_(column),
      found_(std::move(found)),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Ident, Keyword, Int, Real, Imag, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

constexpr std::array<std::string_view, 13> kKeywords = {
    "skip", "do", "times", "od", "lam", "for", "in", "pi", "mean", "norm2", "classical", "sum", "sqrt"};

bool is_keyword(std::string_view s) {
  return std::find(kKeywords.begin(), kKeywords.end(), s) != kKeywords.end();
}

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const std::size_t line = line_;
      const std::size_t col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                      src_[pos_] == '_' || src_[pos_] == '\'')) {
          advance();
        }
        std::string text(src_.substr(start, pos_ - start));
        out.push_back({is_keyword(text) ? Tok::Keyword : Tok::Ident, std::move(text), line, col});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back(number(line, col));
      } else {
        out.push_back({Tok::Symbol, symbol(line, col), line, col});
      }
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool digit_at(std::size_t p) const {
    return p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]));
  }

  Token number(std::size_t line, std::size_t col) {
    const std::size_t start = pos_;
    bool real = false;
    while (digit_at(pos_)) advance();
    // "0..N" is a range, not the real "0."
    if (pos_ + 1 < src_.size() && src_[pos_] == '.' && digit_at(pos_ + 1)) {
      real = true;
      advance();
      while (digit_at(pos_)) advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (digit_at(p)) {
        real = true;
        while (pos_ < p) advance();
        while (digit_at(pos_)) advance();
      }
    }
    std::string text(src_.substr(start, pos_ - start));
    if (pos_ < src_.size() && src_[pos_] == 'j' &&
        !(pos_ + 1 < src_.size() &&
          (std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])) || src_[pos_ + 1] == '_'))) {
      advance();
      return {Tok::Imag, text, line, col};
    }
    if (pos_ < src_.size() && (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      throw ParseError(line_, col_, "'" + std::string(1, src_[pos_]) + "' after number", {});
    }
    return {real ? Tok::Real : Tok::Int, std::move(text), line, col};
  }

  std::string symbol(std::size_t line, std::size_t col) {
    static constexpr std::array<std::string_view, 5> two = {":=", "<=", ">=", "!=", ".."};
    for (auto s : two) {
      if (src_.substr(pos_, 2) == s) {
        advance();
        advance();
        return std::string(s);
      }
    }
    static constexpr std::string_view one = ";@,()|.<>=+-*/^";
    const char c = src_[pos_];
    if (one.find(c) == std::string_view::npos) {
      throw ParseError(line, col, "character '" + std::string(1, c) + "'", {});
    }
    advance();
    return std::string(1, c);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

Value number_value(const Token& t, bool negate) {
  if (t.kind == Tok::Int) {
    Integer z(t.text, 10);
    return Value(negate ? Integer(-z) : z);
  }
  const double d = std::strtod(t.text.c_str(), nullptr);
  if (t.kind == Tok::Imag) return Value(Complex{negate ? -0.0 : 0.0, negate ? -d : d});
  return Value(negate ? -d : d);
}

bool closed(const Expr& e) { return e.free_vars().empty(); }

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program_until_end() {
    Program p = program();
    expect_end();
    return p;
  }

  Expr expr_until_end() {
    Expr e = expr();
    expect_end();
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(std::string_view text) const {
    const Token& t = peek();
    return (t.kind == Tok::Symbol || t.kind == Tok::Keyword) && t.text == text;
  }
  bool accept(std::string_view text) {
    if (!at(text)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.line, t.column, describe(t), std::move(expected));
  }
  void expect(std::string_view text) {
    if (!accept(text)) fail({"'" + std::string(text) + "'"});
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail({"end of input"});
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) fail({"identifier"});
    return toks_[pos_++].text;
  }

  Program program() {
    Program p;
    p.stmts.push_back(stmt());
    while (accept(";")) p.stmts.push_back(stmt());
    return p;
  }

  Stmt stmt() {
    if (accept("skip")) return Stmt{Skip{}};
    if (accept("do")) {
      Expr count = expr();
      expect("times");
      Program body = program();
      expect("od");
      DoTimes loop{std::move(count), std::move(body)};
      if (closed(loop.count)) loop_count(loop, Env{});
      return Stmt{std::move(loop)};
    }
    if (peek().kind != Tok::Ident) fail({"'skip'", "'do'", "identifier"});
    std::string target = ident();
    expect(":=");
    Expr first = expr();
    if (!accept("@")) return Stmt{Assign{std::move(target), std::move(first)}};
    Expr weight = expr();
    if (accept("for")) {
      std::string index = ident();
      expect("in");
      Expr lo = expr();
      expect("..");
      Expr hi = expr();
      if (closed(lo) && closed(hi)) {
        std::int64_t a, b;
        try {
          a = eval(lo, Env{}).to_index();
          b = eval(hi, Env{}).to_index();
        } catch (const Error& e) {
          throw StaticError(std::string("invalid branch range: ") + e.what());
        }
        if (b <= a) throw StaticError("probabilistic assignment to '" + target + "' has no branches");
      }
      return Stmt{IndexedProbAssign{std::move(target), std::move(first), std::move(weight),
                                    std::move(index), std::move(lo), std::move(hi)}};
    }
    ProbAssign pa{std::move(target), {Branch{std::move(first), std::move(weight)}}};
    while (accept(",")) {
      Expr v = expr();
      expect("@");
      Expr w = expr();
      pa.branches.push_back(Branch{std::move(v), std::move(w)});
    }
    return Stmt{std::move(pa)};
  }

  Expr expr() {
    Expr lhs = additive();
    static const std::array<std::pair<std::string_view, BinaryOp>, 6> ops = {{
        {"=", BinaryOp::Eq}, {"!=", BinaryOp::Ne}, {"<", BinaryOp::Lt},
        {"<=", BinaryOp::Le}, {">", BinaryOp::Gt}, {">=", BinaryOp::Ge},
    }};
    for (const auto& [text, op] : ops) {
      if (accept(text)) return Expr::binary(op, std::move(lhs), additive());
    }
    return lhs;
  }

  Expr additive() {
    Expr lhs = multiplicative();
    for (;;) {
      if (accept("+")) {
        lhs = Expr::binary(BinaryOp::Add, std::move(lhs), multiplicative());
      } else if (accept("-")) {
        lhs = Expr::binary(BinaryOp::Sub, std::move(lhs), multiplicative());
      } else {
        return lhs;
      }
    }
  }

  Expr multiplicative() {
    Expr lhs = unary();
    for (;;) {
      if (accept("*")) {
        lhs = Expr::binary(BinaryOp::Mul, std::move(lhs), unary());
      } else if (accept("/")) {
        lhs = Expr::binary(BinaryOp::Div, std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  static bool is_number(const Token& t) {
    return t.kind == Tok::Int || t.kind == Tok::Real || t.kind == Tok::Imag;
  }

  Expr unary() {
    if (accept("-")) {
      // A minus directly on a number literal is part of the literal, unless
      // the literal continues as a power base or callee: -2^2 is -(2^2).
      const Token& after = peek(1);
      const bool continues = after.kind == Tok::Symbol && (after.text == "^" || after.text == "(");
      if (is_number(peek()) && !continues) {
        return Expr::literal(number_value(toks_[pos_++], true));
      }
      return Expr::neg(unary());
    }
    return power();
  }

  Expr power() {
    Expr base = postfix();
    if (accept("^")) return Expr::binary(BinaryOp::Pow, std::move(base), unary());
    return base;
  }

  Expr postfix() {
    Expr e = primary();
    while (accept("(")) {
      Expr arg = expr();
      expect(")");
      e = Expr::apply(std::move(e), std::move(arg));
    }
    return e;
  }

  Expr primary() {
    const Token& t = peek();
    if (is_number(t)) {
      ++pos_;
      return Expr::literal(number_value(t, false));
    }
    if (t.kind == Tok::Ident) {
      ++pos_;
      return Expr::var(t.text);
    }
    if (accept("pi")) return Expr::pi();
    if (accept("(")) {
      if (accept("lam")) return lambda_rest();
      Expr e = expr();
      expect(")");
      return e;
    }
    if (accept("sum")) {
      expect("(");
      std::string param = ident();
      expect(",");
      Expr lo = expr();
      expect(",");
      Expr hi = expr();
      expect(",");
      Expr body = expr();
      expect(")");
      return Expr::sum(std::move(param), std::move(lo), std::move(hi), std::move(body));
    }
    static const std::array<std::pair<std::string_view, BuiltinFn>, 4> builtins = {{
        {"mean", BuiltinFn::Mean},
        {"norm2", BuiltinFn::Norm2},
        {"classical", BuiltinFn::Classical},
        {"sqrt", BuiltinFn::Sqrt},
    }};
    for (const auto& [text, fn] : builtins) {
      if (accept(text)) {
        expect("(");
        std::vector<Expr> args{expr()};
        if (fn == BuiltinFn::Classical) {
          expect(",");
          args.push_back(expr());
        }
        expect(")");
        return Expr::builtin(fn, std::move(args));
      }
    }
    fail({"number", "identifier", "'('", "'pi'", "'mean'", "'norm2'", "'classical'", "'sum'",
          "'sqrt'", "'-'"});
  }

  // after "(" "lam": ident "|" lo "<=" ident "<" hi "." body ")"
  Expr lambda_rest() {
    std::string param = ident();
    expect("|");
    Expr lo = additive();
    expect("<=");
    if (peek().kind != Tok::Ident || peek().text != param) fail({"'" + param + "'"});
    ++pos_;
    expect("<");
    Expr hi = additive();
    expect(".");
    Expr body = expr();
    expect(")");
    return Expr::lambda(std::move(param), std::move(lo), std::move(hi), std::move(body));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

std::int64_t loop_count(const DoTimes& loop, const Env& env) {
  Value v;
  try {
    v = eval(loop.count, env);
  } catch (const Error& e) {
    throw StaticError(std::string("loop count is not statically evaluable: ") + e.what());
  }
  if (!v.is_int()) throw StaticError("loop count must be an integer, got " + to_string(v));
  if (sgn(v.as_int()) < 0) throw StaticError("loop count must be nonnegative, got " + to_string(v));
  if (!v.as_int().fits_slong_p()) throw StaticError("loop count too large");
  return v.as_int().get_si();
}

Program parse(std::string_view text) {
  Parser p(Lexer(text).run());
  return p.program_until_end();
}

Expr parse_expr(std::string_view text) {
  Parser p(Lexer(text).run());
  return p.expr_until_end();
}

}  // namespace pwp
