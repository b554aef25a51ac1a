#include "pwp/expr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "pwp/errors.hpp"

namespace pwp {

std::string_view symbol(BinaryOp op) noexcept {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Pow: return "^";
    case BinaryOp::Eq: return "=";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
  }
  return "?";
}

std::string_view name(BuiltinFn fn) noexcept {
  switch (fn) {
    case BuiltinFn::Mean: return "mean";
    case BuiltinFn::Norm2: return "norm2";
    case BuiltinFn::Classical: return "classical";
    case BuiltinFn::Sqrt: return "sqrt";
  }
  return "?";
}

bool is_comparison(BinaryOp op) noexcept {
  return op == BinaryOp::Eq || op == BinaryOp::Ne || op == BinaryOp::Lt || op == BinaryOp::Le ||
         op == BinaryOp::Gt || op == BinaryOp::Ge;
}

// ---------------------------------------------------------------------------
// Construction

namespace {

using Names = std::vector<std::string>;

void merge_into(Names& out, const Names& in) {
  Names merged;
  merged.reserve(out.size() + in.size());
  std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(merged));
  out = std::move(merged);
}

Names without(Names names, const std::string& bound) {
  auto it = std::lower_bound(names.begin(), names.end(), bound);
  if (it != names.end() && *it == bound) names.erase(it);
  return names;
}

Names binder_free(const Expr& lo, const Expr& hi, const std::string& param, const Expr& body) {
  Names out = lo.free_vars();
  merge_into(out, hi.free_vars());
  merge_into(out, without(body.free_vars(), param));
  return out;
}

}  // namespace

Expr Expr::literal(Value v) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{node::Literal{std::move(v)}, {}}));
}

Expr Expr::var(std::string name) {
  Names fv{name};
  return Expr(std::make_shared<const ExprNode>(ExprNode{node::Var{std::move(name)}, std::move(fv)}));
}

Expr Expr::pi() { return Expr(std::make_shared<const ExprNode>(ExprNode{node::Pi{}, {}})); }

Expr Expr::neg(Expr operand) {
  Names fv = operand.free_vars();
  return Expr(std::make_shared<const ExprNode>(ExprNode{node::Neg{std::move(operand)}, std::move(fv)}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  Names fv = lhs.free_vars();
  merge_into(fv, rhs.free_vars());
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{node::Binary{op, std::move(lhs), std::move(rhs)}, std::move(fv)}));
}

Expr Expr::apply(Expr fn, Expr arg) {
  Names fv = fn.free_vars();
  merge_into(fv, arg.free_vars());
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{node::Apply{std::move(fn), std::move(arg)}, std::move(fv)}));
}

Expr Expr::lambda(std::string param, Expr lo, Expr hi, Expr body) {
  Names fv = binder_free(lo, hi, param, body);
  return Expr(std::make_shared<const ExprNode>(ExprNode{
      node::Lambda{std::move(param), std::move(lo), std::move(hi), std::move(body)}, std::move(fv)}));
}

Expr Expr::sum(std::string param, Expr lo, Expr hi, Expr body) {
  Names fv = binder_free(lo, hi, param, body);
  return Expr(std::make_shared<const ExprNode>(ExprNode{
      node::Sum{std::move(param), std::move(lo), std::move(hi), std::move(body)}, std::move(fv)}));
}

Expr Expr::builtin(BuiltinFn fn, std::vector<Expr> args) {
  const std::size_t arity = fn == BuiltinFn::Classical ? 2 : 1;
  if (args.size() != arity) {
    throw TypeMismatch(std::string(name(fn)) + " takes " + std::to_string(arity) + " argument(s)");
  }
  Names fv;
  for (const auto& a : args) merge_into(fv, a.free_vars());
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{node::Builtin{fn, std::move(args)}, std::move(fv)}));
}

const std::vector<std::string>& Expr::free_vars() const noexcept { return node_->free; }

bool Expr::has_free(std::string_view name) const noexcept {
  const auto& fv = node_->free;
  auto it = std::lower_bound(fv.begin(), fv.end(), name,
                             [](const std::string& a, std::string_view b) { return a < b; });
  return it != fv.end() && *it == name;
}

namespace {

struct StructEq {
  bool operator()(const node::Literal& a, const node::Literal& b) const { return a.value == b.value; }
  bool operator()(const node::Var& a, const node::Var& b) const { return a.name == b.name; }
  bool operator()(const node::Pi&, const node::Pi&) const { return true; }
  bool operator()(const node::Neg& a, const node::Neg& b) const { return a.operand == b.operand; }
  bool operator()(const node::Binary& a, const node::Binary& b) const {
    return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
  }
  bool operator()(const node::Apply& a, const node::Apply& b) const {
    return a.fn == b.fn && a.arg == b.arg;
  }
  bool operator()(const node::Lambda& a, const node::Lambda& b) const {
    return a.param == b.param && a.lo == b.lo && a.hi == b.hi && a.body == b.body;
  }
  bool operator()(const node::Sum& a, const node::Sum& b) const {
    return a.param == b.param && a.lo == b.lo && a.hi == b.hi && a.body == b.body;
  }
  bool operator()(const node::Builtin& a, const node::Builtin& b) const {
    return a.fn == b.fn && a.args == b.args;
  }
  template <class A, class B>
  bool operator()(const A&, const B&) const {
    return false;
  }
};

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  return std::visit(StructEq{}, a.node_->v, b.node_->v);
}

// ---------------------------------------------------------------------------
// Value helpers

double norm2(const Complex& z) noexcept { return z.real() * z.real() + z.imag() * z.imag(); }

bool value_equal(const Value& a, const Value& b) {
  if (a.is_numeric() && b.is_numeric()) {
    if (a.is_int() && b.is_int()) return a.as_int() == b.as_int();
    return a.to_complex() == b.to_complex();
  }
  if (a.is_vector() && b.is_vector()) {
    const auto x = a.as_vector().amplitudes();
    const auto y = b.as_vector().amplitudes();
    return std::equal(x.begin(), x.end(), y.begin(), y.end());
  }
  throw TypeMismatch("cannot compare " + std::string(a.kind_name()) + " with " +
                     std::string(b.kind_name()));
}

bool approx_equal(const Value& a, const Value& b, double tol) {
  if (a.is_numeric() && b.is_numeric()) {
    const Complex x = a.to_complex(), y = b.to_complex();
    return x == y || std::abs(x - y) <= tol;
  }
  if (a.is_vector() && b.is_vector()) {
    const auto x = a.as_vector().amplitudes();
    const auto y = b.as_vector().amplitudes();
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != y[i] && !(std::abs(x[i] - y[i]) <= tol)) return false;
    }
    return true;
  }
  throw TypeMismatch("cannot compare " + std::string(a.kind_name()) + " with " +
                     std::string(b.kind_name()));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// Local bindings introduced by lambda/sum parameters, innermost first.
struct Scope {
  std::string_view name;
  const Value* value;
  const Scope* parent;
};

Value arith(BinaryOp op, const Value& a, const Value& b) {
  if (!a.is_numeric() || !b.is_numeric()) {
    throw TypeMismatch("operator " + std::string(symbol(op)) + " applied to " +
                       std::string(a.kind_name()) + " and " + std::string(b.kind_name()));
  }
  if (op == BinaryOp::Div) {
    const Complex d = b.to_complex();
    if (d == Complex{0.0, 0.0}) throw DivisionByZero();
    if (a.is_complex() || b.is_complex()) return Value(a.to_complex() / d);
    return Value(a.to_real() / b.to_real());
  }
  if (op == BinaryOp::Pow) {
    if (a.is_int() && b.is_int() && sgn(b.as_int()) >= 0) {
      if (!b.as_int().fits_ulong_p() || b.as_int() > 4096) throw TypeMismatch("exponent too large");
      Integer r;
      mpz_pow_ui(r.get_mpz_t(), a.as_int().get_mpz_t(), b.as_int().get_ui());
      return Value(std::move(r));
    }
    if (!a.is_complex() && !b.is_complex()) {
      const double x = a.to_real();
      const double y = b.to_real();
      if (x == 0.0 && y < 0.0) throw DivisionByZero();
      if (x >= 0.0 || std::floor(y) == y) return Value(std::pow(x, y));
    }
    return Value(std::pow(a.to_complex(), b.to_complex()));
  }
  if (a.is_int() && b.is_int()) {
    switch (op) {
      case BinaryOp::Add: return Value(Integer(a.as_int() + b.as_int()));
      case BinaryOp::Sub: return Value(Integer(a.as_int() - b.as_int()));
      default: return Value(Integer(a.as_int() * b.as_int()));
    }
  }
  if (a.is_complex() || b.is_complex()) {
    const Complex x = a.to_complex();
    const Complex y = b.to_complex();
    switch (op) {
      case BinaryOp::Add: return Value(x + y);
      case BinaryOp::Sub: return Value(x - y);
      default: return Value(x * y);
    }
  }
  const double x = a.to_real();
  const double y = b.to_real();
  switch (op) {
    case BinaryOp::Add: return Value(x + y);
    case BinaryOp::Sub: return Value(x - y);
    default: return Value(x * y);
  }
}

bool ordered(BinaryOp op, const Value& a, const Value& b) {
  int c;
  if (a.is_int() && b.is_int()) {
    c = cmp(a.as_int(), b.as_int());
  } else {
    const double x = a.to_real();
    const double y = b.to_real();
    c = x < y ? -1 : (x > y ? 1 : 0);
  }
  switch (op) {
    case BinaryOp::Lt: return c < 0;
    case BinaryOp::Le: return c <= 0;
    case BinaryOp::Gt: return c > 0;
    default: return c >= 0;
  }
}

// A lambda node together with the values of the index variables it reads
// from enclosing binders.
struct MemoKey {
  const ExprNode* node;
  std::vector<long> locals;
  bool operator==(const MemoKey&) const = default;
};

struct MemoHash {
  std::size_t operator()(const MemoKey& k) const noexcept {
    std::size_t h = std::hash<const void*>{}(k.node);
    for (long v : k.locals) h = h * 1000003u ^ std::hash<long>{}(v);
    return h;
  }
};

using Memo = std::unordered_map<MemoKey, Value, MemoHash>;

class Evaluator {
 public:
  Evaluator(const Env& base, Memo* memo)
      : base_(base), memo_(memo) {}

  Value eval(const Expr& e, const Scope* scope) {
    return std::visit([&](const auto& n) { return visit(e, n, scope); }, e.node().v);
  }

 private:
  const Value& lookup(std::string_view name, const Scope* scope) const {
    for (const Scope* s = scope; s; s = s->parent) {
      if (s->name == name) return *s->value;
    }
    return base_.at(name);
  }

  Value visit(const Expr&, const node::Literal& n, const Scope*) { return n.value; }
  Value visit(const Expr&, const node::Var& n, const Scope* s) { return lookup(n.name, s); }
  Value visit(const Expr&, const node::Pi&, const Scope*) { return Value(std::numbers::pi); }

  Value visit(const Expr&, const node::Neg& n, const Scope* s) {
    Value v = eval(n.operand, s);
    if (v.is_int()) return Value(Integer(-v.as_int()));
    if (v.is_real()) return Value(-v.as_real());
    if (v.is_complex()) return Value(-v.as_complex());
    throw TypeMismatch("cannot negate " + std::string(v.kind_name()));
  }

  Value visit(const Expr&, const node::Binary& n, const Scope* s) {
    Value a = eval(n.lhs, s);
    Value b = eval(n.rhs, s);
    switch (n.op) {
      case BinaryOp::Eq: return Value::boolean(value_equal(a, b));
      case BinaryOp::Ne: return Value::boolean(!value_equal(a, b));
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge: return Value::boolean(ordered(n.op, a, b));
      default: return arith(n.op, a, b);
    }
  }

  Value visit(const Expr&, const node::Apply& n, const Scope* s) {
    Value fn = eval(n.fn, s);
    Value arg = eval(n.arg, s);
    return apply(fn, arg);
  }

  Value apply(const Value& fn, const Value& arg) {
    const std::int64_t i = arg.to_index();
    if (fn.is_vector()) {
      const AmpVector& v = fn.as_vector();
      if (i < 0 || static_cast<std::size_t>(i) >= v.size()) {
        throw IndexOutOfRange("index " + std::to_string(i) + " outside 0.." +
                              std::to_string(v.size()));
      }
      return Value(v[static_cast<std::size_t>(i)]);
    }
    if (fn.is_func()) {
      const FuncData& f = fn.as_func().data();
      if (i < f.lower || i >= f.upper) {
        throw IndexOutOfRange("argument " + std::to_string(i) + " outside " +
                              std::to_string(f.lower) + ".." + std::to_string(f.upper));
      }
      Value iv(Integer(static_cast<long>(i)));
      Scope local{f.param, &iv, nullptr};
      Evaluator inner(f.captured, nullptr);
      return inner.eval(f.body, &local);
    }
    throw TypeMismatch("cannot apply " + std::string(fn.kind_name()));
  }

  std::pair<std::int64_t, std::int64_t> bounds(const Expr& lo, const Expr& hi, const Scope* s) {
    const std::int64_t a = eval(lo, s).to_index();
    const std::int64_t b = eval(hi, s).to_index();
    if (b < a) {
      throw IndexOutOfRange("range " + std::to_string(a) + ".." + std::to_string(b) +
                            " has upper < lower");
    }
    return {a, b};
  }

  // Fills key.locals with the innermost local binding of every free variable
  // of `e`; false if one of them is not a machine-sized integer.
  bool memo_key(const Expr& e, const Scope* scope, MemoKey& key) const {
    key.node = e.get();
    for (const auto& name : e.node().free) {
      for (const Scope* s = scope; s; s = s->parent) {
        if (s->name != name) continue;
        if (!s->value->is_int() || !s->value->as_int().fits_slong_p()) return false;
        key.locals.push_back(s->value->as_int().get_si());
        break;
      }
    }
    return true;
  }

  Value visit(const Expr& e, const node::Lambda& n, const Scope* s) {
    MemoKey key;
    const bool cacheable = memo_ && memo_key(e, s, key);
    if (cacheable) {
      if (auto it = memo_->find(key); it != memo_->end()) return it->second;
    }
    Value out = make_lambda(n, s);
    if (cacheable) memo_->emplace(std::move(key), out);
    return out;
  }

  Value make_lambda(const node::Lambda& n, const Scope* s) {
    const auto [lo, hi] = bounds(n.lo, n.hi, s);
    if (lo == 0 && hi > 0) {
      std::vector<Complex> amps;
      amps.reserve(static_cast<std::size_t>(hi));
      bool numeric = true;
      for (std::int64_t k = 0; k < hi && numeric; ++k) {
        Value kv(Integer(static_cast<long>(k)));
        Scope local{n.param, &kv, s};
        Value r = eval(n.body, &local);
        if (r.is_numeric()) {
          amps.push_back(r.to_complex());
        } else {
          numeric = false;
        }
      }
      if (numeric) return Value(AmpVector(std::move(amps)));
    }
    Env captured = base_;
    std::vector<const Scope*> chain;
    for (const Scope* c = s; c; c = c->parent) chain.push_back(c);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      captured.set(std::string((*it)->name), *(*it)->value);
    }
    return Value(FuncValue(std::make_shared<const FuncData>(
        FuncData{n.param, lo, hi, n.body, std::move(captured)})));
  }

  Value visit(const Expr&, const node::Sum& n, const Scope* s) {
    const auto [lo, hi] = bounds(n.lo, n.hi, s);
    Integer isum = 0;
    Complex csum{0.0, 0.0};
    bool all_int = true;
    bool any_complex = false;
    for (std::int64_t k = lo; k < hi; ++k) {
      Value kv(Integer(static_cast<long>(k)));
      Scope local{n.param, &kv, s};
      Value r = eval(n.body, &local);
      if (!r.is_numeric()) throw TypeMismatch("sum body must be numeric, got " + std::string(r.kind_name()));
      if (all_int && r.is_int()) {
        isum += r.as_int();
        continue;
      }
      if (all_int) {
        csum = Complex{isum.get_d(), 0.0};
        all_int = false;
      }
      any_complex = any_complex || r.is_complex();
      csum += r.to_complex();
    }
    if (all_int) return Value(std::move(isum));
    if (any_complex) return Value(csum);
    return Value(csum.real());
  }

  Value visit(const Expr&, const node::Builtin& n, const Scope* s) {
    switch (n.fn) {
      case BuiltinFn::Mean: {
        Value v = eval(n.args[0], s);
        if (v.is_vector()) return Value(v.as_vector().mean());
        if (v.is_func()) {
          const FuncData& f = v.as_func().data();
          if (f.upper == f.lower) throw DivisionByZero();
          Complex acc{0.0, 0.0};
          for (std::int64_t k = f.lower; k < f.upper; ++k) {
            acc += apply(v, Value(Integer(static_cast<long>(k)))).to_complex();
          }
          return Value(acc / static_cast<double>(f.upper - f.lower));
        }
        throw TypeMismatch("mean of " + std::string(v.kind_name()));
      }
      case BuiltinFn::Norm2: {
        Value v = eval(n.args[0], s);
        if (v.is_numeric()) return Value(norm2(v.to_complex()));
        if (v.is_vector()) {
          double acc = 0.0;
          for (const auto& a : v.as_vector().amplitudes()) acc += norm2(a);
          return Value(acc);
        }
        throw TypeMismatch("norm2 of " + std::string(v.kind_name()));
      }
      case BuiltinFn::Classical: {
        const std::int64_t i = eval(n.args[0], s).to_index();
        const std::int64_t size = eval(n.args[1], s).to_index();
        if (size < 1) throw IndexOutOfRange("classical state needs N >= 1");
        if (i < 0 || i >= size) {
          throw IndexOutOfRange("classical(" + std::to_string(i) + ", " + std::to_string(size) +
                                ") out of range");
        }
        std::vector<Complex> amps(static_cast<std::size_t>(size), Complex{0.0, 0.0});
        amps[static_cast<std::size_t>(i)] = Complex{1.0, 0.0};
        return Value(AmpVector(std::move(amps)));
      }
      case BuiltinFn::Sqrt: {
        Value v = eval(n.args[0], s);
        if (v.is_int() || v.is_real()) {
          const double x = v.to_real();
          if (x >= 0.0) return Value(std::sqrt(x));
        }
        return Value(std::sqrt(v.to_complex()));
      }
    }
    throw TypeMismatch("unknown builtin");
  }

  const Env& base_;
  Memo* memo_;
};

}  // namespace

Value eval(const Expr& e, const Env& env) {
  Evaluator ev(env, nullptr);
  return ev.eval(e, nullptr);
}

Value eval_memoized(const Expr& e, const Env& env) {
  Memo memo;
  Evaluator ev(env, &memo);
  return ev.eval(e, nullptr);
}

// ---------------------------------------------------------------------------
// Substitution

std::string fresh_name(const std::string& base, const std::vector<std::string>& avoid) {
  std::string candidate = base + "'";
  while (std::find(avoid.begin(), avoid.end(), candidate) != avoid.end()) candidate += "'";
  return candidate;
}

namespace {

// One substitution e[x/r]. Results are cached per node, so a shared subtree is
// rewritten once and stays shared in the output.
class Substituter {
 public:
  Substituter(const std::string& x, const Expr& r) : x_(x), r_(r) {}

  Expr run(const Expr& e) {
    if (!e.has_free(x_)) return e;
    if (auto it = cache_.find(e.get()); it != cache_.end()) return it->second.second;
    Expr out = rewrite(e);
    cache_.emplace(e.get(), std::pair{e, out});
    return out;
  }

 private:
  Expr rewrite(const Expr& e) {
    const auto& v = e.node().v;
    if (std::holds_alternative<node::Var>(v)) return r_;
    if (const auto* n = std::get_if<node::Neg>(&v)) return Expr::neg(run(n->operand));
    if (const auto* n = std::get_if<node::Binary>(&v)) return Expr::binary(n->op, run(n->lhs), run(n->rhs));
    if (const auto* n = std::get_if<node::Apply>(&v)) return Expr::apply(run(n->fn), run(n->arg));
    if (const auto* n = std::get_if<node::Builtin>(&v)) {
      std::vector<Expr> args;
      args.reserve(n->args.size());
      for (const auto& a : n->args) args.push_back(run(a));
      return Expr::builtin(n->fn, std::move(args));
    }
    if (const auto* n = std::get_if<node::Lambda>(&v)) {
      return binder(*n, [](std::string p, Expr lo, Expr hi, Expr body) {
        return Expr::lambda(std::move(p), std::move(lo), std::move(hi), std::move(body));
      });
    }
    if (const auto* n = std::get_if<node::Sum>(&v)) {
      return binder(*n, [](std::string p, Expr lo, Expr hi, Expr body) {
        return Expr::sum(std::move(p), std::move(lo), std::move(hi), std::move(body));
      });
    }
    return e;
  }

  template <class Binder, class Make>
  Expr binder(const Binder& n, Make make) {
    Expr lo = run(n.lo);
    Expr hi = run(n.hi);
    if (n.param == x_ || !n.body.has_free(x_)) return make(n.param, lo, hi, n.body);
    if (!r_.has_free(n.param)) return make(n.param, lo, hi, run(n.body));
    Names avoid = r_.free_vars();
    merge_into(avoid, n.body.free_vars());
    merge_into(avoid, Names{x_});
    const std::string renamed = fresh_name(n.param, avoid);
    Expr body = Substituter(n.param, Expr::var(renamed)).run(n.body);
    return make(renamed, lo, hi, run(body));
  }

  const std::string& x_;
  const Expr& r_;
  // Holds the source node too, so its address cannot be reused while cached.
  std::unordered_map<const ExprNode*, std::pair<Expr, Expr>> cache_;
};

}  // namespace

Expr subst(const Expr& e, const std::string& x, const Expr& r) { return Substituter(x, r).run(e); }

}  // namespace pwp
