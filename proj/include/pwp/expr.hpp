#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "pwp/value.hpp"

namespace pwp {

enum class BinaryOp { Add, Sub, Mul, Div, Pow, Eq, Ne, Lt, Le, Gt, Ge };
enum class BuiltinFn { Mean, Norm2, Classical, Sqrt };

std::string_view symbol(BinaryOp op) noexcept;
std::string_view name(BuiltinFn fn) noexcept;
bool is_comparison(BinaryOp op) noexcept;

struct ExprNode;

// Immutable expression tree handle. Subtrees are shared; substitution
// returns the original handle whenever nothing changes.
class Expr {
 public:
  static Expr literal(Value v);
  static Expr var(std::string name);
  static Expr pi();
  static Expr neg(Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr apply(Expr fn, Expr arg);
  // (lam param | lo <= param < hi . body)
  static Expr lambda(std::string param, Expr lo, Expr hi, Expr body);
  // sum over lo <= param < hi of body
  static Expr sum(std::string param, Expr lo, Expr hi, Expr body);
  static Expr builtin(BuiltinFn fn, std::vector<Expr> args);

  const ExprNode& node() const noexcept { return *node_; }
  const ExprNode* get() const noexcept { return node_.get(); }
  const std::vector<std::string>& free_vars() const noexcept;
  bool has_free(std::string_view name) const noexcept;

  // Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

inline Expr operator+(Expr a, Expr b) { return Expr::binary(BinaryOp::Add, std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return Expr::binary(BinaryOp::Sub, std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return Expr::binary(BinaryOp::Mul, std::move(a), std::move(b)); }
inline Expr operator/(Expr a, Expr b) { return Expr::binary(BinaryOp::Div, std::move(a), std::move(b)); }

namespace node {
struct Literal { Value value; };
struct Var { std::string name; };
struct Pi {};
struct Neg { Expr operand; };
struct Binary { BinaryOp op; Expr lhs, rhs; };
struct Apply { Expr fn, arg; };
struct Lambda { std::string param; Expr lo, hi, body; };
struct Sum { std::string param; Expr lo, hi, body; };
struct Builtin { BuiltinFn fn; std::vector<Expr> args; };
}  // namespace node

struct ExprNode {
  using Variant = std::variant<node::Literal, node::Var, node::Pi, node::Neg, node::Binary,
                               node::Apply, node::Lambda, node::Sum, node::Builtin>;
  Variant v;
  std::vector<std::string> free;  // sorted, unique
};

struct FuncData {
  std::string param;
  std::int64_t lower;
  std::int64_t upper;  // exclusive
  Expr body;
  Env captured;
};

// Evaluates `e` in `env`. Lambdas over 0 <= i < n whose body yields a number at
// every index are tabulated into an AmpVector; any other lambda becomes a
// FuncValue closing over its defining environment.
Value eval(const Expr& e, const Env& env);

// Like eval(), but caches lambda values keyed by node and by the integer
// indices of enclosing binders the lambda reads. Used for the large, highly
// shared trees built by backward substitution.
Value eval_memoized(const Expr& e, const Env& env);

// Capture-avoiding substitution e[x/r].
Expr subst(const Expr& e, const std::string& x, const Expr& r);

// A name not in `avoid`, derived from `base` by appending primes.
std::string fresh_name(const std::string& base, const std::vector<std::string>& avoid);

// The language's "=": numbers compare numerically across Int/Real/Complex,
// vectors compare exactly componentwise. Functions cannot be compared.
bool value_equal(const Value& a, const Value& b);

// Componentwise comparison with an absolute tolerance; never used by eval.
bool approx_equal(const Value& a, const Value& b, double tol);

// Square norm re^2 + im^2.
double norm2(const Complex& z) noexcept;

}  // namespace pwp
