#include <gtest/gtest.h>

#include <optional>

#include "pwp/errors.hpp"
#include "pwp/wp.hpp"
#include "random_programs.hpp"

using namespace pwp;

namespace {

// Backward oracle: substitute, then evaluate with memoized lambdas.
double backward(const testgen::Generator::Case& c, const Expr& post) {
  return eval_memoized(wp_subst(c.program, post, c.env), c.env).to_real();
}

}  // namespace

TEST(RoundTrip, RandomExpressions) {
  testgen::Generator gen(1);
  for (int k = 0; k < 2000; ++k) {
    const Expr e = gen.syntax_expr(5);
    const std::string text = pretty(e);
    ASSERT_EQ(parse_expr(text), e) << text;
    ASSERT_EQ(pretty(parse_expr(text)), text);
  }
}

TEST(RoundTrip, RandomPrograms) {
  testgen::Generator gen(2);
  for (int k = 0; k < 1000; ++k) {
    const Program p = gen.syntax_program(2);
    const std::string text = pretty(p);
    ASSERT_EQ(parse(text), p) << text;
  }
}

TEST(Substitution, LemmaOnRandomExpressions) {
  // eval(e[x/r], env) = eval(e, env[x := eval(r, env)]) whenever r evaluates.
  testgen::Generator gen(3);
  const Env base{{"x", Value(2)}, {"y", Value(0.5)}, {"i", Value(3)}, {"N", Value(4)}, {"x'", Value(1)},
                 {"x0", Value(1)}, {"S", eval(parse_expr("classical(1, 4)"), {})}, {"f", eval(parse_expr("classical(3, 5)"), {})}};
  int compared = 0;
  for (int k = 0; k < 5000; ++k) {
    const Expr e = gen.syntax_expr(4);
    const Expr r = gen.syntax_expr(2);
    Value rv;
    try {
      rv = eval(r, base);
    } catch (const Error&) {
      continue;
    }
    const Env bound = base.with("x", rv);
    std::optional<Value> lhs, rhs;
    try { lhs = eval(subst(e, "x", r), base); } catch (const Error&) {}
    try { rhs = eval(e, bound); } catch (const Error&) {}
    ASSERT_EQ(lhs.has_value(), rhs.has_value()) << pretty(e) << "   [x/" << pretty(r) << "]";
    // Closures have no value equality; NaN is never equal to itself.
    const auto comparable = [](const Value& v) {
      return !v.is_func() && !(v.is_numeric() && std::isnan(std::abs(v.to_complex())));
    };
    if (lhs && comparable(*lhs) && comparable(*rhs)) {
      ASSERT_TRUE(approx_equal(*lhs, *rhs, 1e-9)) << pretty(e) << "   [x/" << pretty(r) << "]";
      ++compared;
    }
  }
  EXPECT_GT(compared, 500);
}

TEST(Substitution, IdentityAndUnusedVariable) {
  testgen::Generator gen(4);
  for (int k = 0; k < 500; ++k) {
    const Expr e = gen.syntax_expr(4);
    EXPECT_EQ(subst(e, "x", Expr::var("x")), e);
    EXPECT_EQ(subst(e, "zz", parse_expr("1 + q")), e);
  }
}

TEST(Wp, ForwardMatchesBackward) {
  testgen::Generator gen(5);
  for (int k = 0; k < 300; ++k) {
    const auto c = gen.semantic_case();
    for (const auto& post : c.posts) {
      ASSERT_NEAR(wp(c.program, post, c.env), backward(c, post), 1e-9) << pretty(c.program) << "\npost " << pretty(post);
    }
  }
}

TEST(Wp, Linearity) {
  testgen::Generator gen(6);
  for (int k = 0; k < 200; ++k) {
    const auto c = gen.semantic_case();
    const double a = gen.real(0.0, 3.0), b = gen.real(0.0, 3.0);
    const Expr& p1 = gen.pick(c.posts);
    const Expr& p2 = gen.pick(c.predicates);
    const Expr combo = Expr::literal(Value(a)) * p1 + Expr::literal(Value(b)) * p2;
    const double lhs = wp(c.program, combo, c.env);
    EXPECT_NEAR(lhs, a * wp(c.program, p1, c.env) + b * wp(c.program, p2, c.env), 1e-9);
  }
}

TEST(Wp, FeasibilityAndTotality) {
  testgen::Generator gen(7);
  for (int k = 0; k < 200; ++k) {
    const auto c = gen.semantic_case();
    for (const auto& pred : c.predicates) {
      const double v = wp(c.program, pred, c.env);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0 + 1e-12);
    }
    EXPECT_NEAR(wp(c.program, parse_expr("1"), c.env), 1.0, 1e-9);
    EXPECT_NEAR(final_distribution(c.program, c.env).total_weight(), 1.0, 1e-9);
    for (const auto& o : final_distribution(c.program, c.env).outcomes) EXPECT_GT(o.weight, 0.0);
  }
}

TEST(Wp, SamplerAgreesWithDistribution) {
  testgen::Generator gen(8);
  for (int k = 0; k < 20; ++k) {
    const auto c = gen.semantic_case(4, 2);
    const Sampler s(c.program, c.env);
    const Expr& pred = c.predicates[0];
    const int runs = 4000;
    int hits = 0;
    for (int seed = 0; seed < runs; ++seed) hits += eval(pred, s.run(seed)).to_real() == 1.0;
    const double p = wp(c.program, pred, c.env);
    const double sigma = std::sqrt(p * (1 - p) / runs);
    EXPECT_NEAR(static_cast<double>(hits) / runs, p, 5 * sigma + 1e-12) << pretty(c.program);
  }
}
