#include <gtest/gtest.h>

#include <cmath>

#include "pwp/grover.hpp"
#include "pwp/wp.hpp"

using namespace pwp;
using namespace pwp::grover;

namespace {

// Oracle: (A_C, B_C) as the C-th power of the step matrix applied to (0, 1),
// computed by repeated squaring.
struct M2 {
  Rational a, b, c, d;
  M2 operator*(const M2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

std::pair<Rational, Rational> ab_by_power(std::int64_t n, std::int64_t c) {
  M2 step{1, 2, Rational(-2, n), Rational(n - 4, n)};
  step.c.canonicalize();
  step.d.canonicalize();
  M2 acc{1, 0, 0, 1};
  for (; c > 0; c >>= 1) {
    if (c & 1) acc = acc * step;
    step = step * step;
  }
  return {acc.b, acc.d};
}

// Oracle: success probability by a plain amplitude simulation with two
// distinct values (marked and unmarked).
double p_by_amplitudes(std::int64_t n, std::int64_t c) {
  double marked = 1.0 / std::sqrt(static_cast<double>(n));
  double other = marked;
  for (std::int64_t k = 0; k < c; ++k) {
    const double mean = (-marked + (n - 1) * other) / n;
    marked = 2 * mean + marked;
    other = 2 * mean - other;
  }
  return marked * marked;
}

// Earliest maximizer of the closed form over C in 0..cmax.
std::int64_t brute_argmax(std::int64_t n, std::int64_t cmax) {
  std::int64_t best = 0;
  for (std::int64_t c = 1; c <= cmax; ++c) {
    if (success_prob_closed(n, c) > success_prob_closed(n, best) + 1e-12) best = c;
  }
  return best;
}

// Last C before the first zero of sin^2((2C+1) theta), i.e. the first lobe.
std::int64_t first_lobe_end(std::int64_t n) {
  return static_cast<std::int64_t>(std::floor(M_PI / (2 * theta(n)) - 0.5));
}

std::int64_t window_end(std::int64_t n) {
  return static_cast<std::int64_t>(std::ceil(2 * std::sqrt(static_cast<double>(n))));
}

}  // namespace

TEST(Params, Validation) {
  EXPECT_THROW((Params{0, 0, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((Params{4, 4, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((Params{4, -1, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((Params{4, 0, -1}.validate()), std::invalid_argument);
  EXPECT_THROW(build_grover_program({4, 0, -1}), std::invalid_argument);
  EXPECT_NO_THROW((Params{1, 0, 0}.validate()));
}

TEST(Builder, MatchesParsedSource) {
  const auto inst = build_grover_program({8, 4, 1});
  EXPECT_EQ(inst.program, parse(program_source()));
  EXPECT_EQ(parse(pretty(inst.program)), inst.program);
  EXPECT_EQ(inst.env.at("N"), Value(8));
  EXPECT_EQ(inst.env.at("C"), Value(1));
  EXPECT_EQ(inst.env.at("x0"), Value(4));
  EXPECT_EQ(inst.post, parse_expr("S = classical(x0, N)"));
}

TEST(Recurrence, Examples) {
  const AB z = recurrence_AB(128, 0);
  EXPECT_EQ(z.a, 0);
  EXPECT_EQ(z.b, 1);
  for (std::int64_t n : {1, 3, 4, 128, 1000}) {
    const AB one = recurrence_AB(n, 1);
    EXPECT_EQ(one.a, 2);
    Rational expected(n - 4, n);
    expected.canonicalize();
    EXPECT_EQ(one.b, expected);
  }
  const AB two = recurrence_AB(4, 2);
  EXPECT_EQ(two.a, 2);
  EXPECT_EQ(two.b, -1);
}

TEST(Recurrence, MatchesMatrixPower) {
  for (std::int64_t n : {1, 2, 3, 4, 7, 64, 128, 1024}) {
    const auto table = recurrence_table(n, 60);
    ASSERT_EQ(table.size(), 61u);
    for (std::int64_t c = 0; c <= 60; ++c) {
      const auto [a, b] = ab_by_power(n, c);
      EXPECT_EQ(table[c].a, a) << n << " " << c;
      EXPECT_EQ(table[c].b, b) << n << " " << c;
      // Exact rationals are real and stay in lowest terms.
      Rational s = table[c].a + table[c].b;
      EXPECT_EQ(s, a + b);
      EXPECT_EQ(gcd(table[c].a.get_num(), table[c].a.get_den()), 1);
    }
  }
}

TEST(Probability, Examples) {
  for (std::int64_t n : {1, 2, 5, 128}) {
    EXPECT_NEAR(success_prob_recurrence(n, 0), 1.0 / n, 1e-15);
    EXPECT_NEAR(success_prob_closed(n, 0), 1.0 / n, 1e-15);
  }
  EXPECT_EQ(success_prob_recurrence(4, 1), 1.0);
  EXPECT_NEAR(success_prob_closed(4, 1), 1.0, 1e-15);
  EXPECT_NEAR(success_prob_recurrence(128, 8), 0.996, 1e-3);
  EXPECT_NEAR(success_prob_closed(128, 8), 0.9956, 5e-4);
  EXPECT_EQ(success_prob_exact(4, 1), 1);
}

TEST(Probability, AgreesWithAmplitudes) {
  for (std::int64_t n : {1, 2, 3, 4, 8, 16, 100, 128, 1024}) {
    for (std::int64_t c = 0; c <= 40; ++c) {
      const double oracle = p_by_amplitudes(n, c);
      EXPECT_NEAR(success_prob_recurrence(n, c), oracle, 1e-9);
      EXPECT_NEAR(success_prob_closed(n, c), oracle, 1e-9);
      EXPECT_GE(success_prob_recurrence(n, c), 0.0);
      EXPECT_LE(success_prob_recurrence(n, c), 1.0);
    }
  }
}

TEST(Theta, Examples) {
  EXPECT_NEAR(theta(1), M_PI / 2, 1e-15);
  EXPECT_NEAR(theta(4), M_PI / 6, 1e-15);
  EXPECT_NEAR(theta(128), 0.08850, 1e-5);
  EXPECT_NEAR(std::pow(std::sin(theta(128)), 2), 1.0 / 128, 1e-15);
}

TEST(Optimal, RealValued) {
  EXPECT_NEAR(optimal_real(1), 0.0, 1e-15);
  EXPECT_NEAR(optimal_real(4), 1.0, 1e-12);
  EXPECT_NEAR(optimal_real(128), 8.374, 1e-3);
  const double n = 1e6;
  EXPECT_NEAR(optimal_real(1000000) / std::sqrt(n), M_PI / 4, 0.01 * M_PI / 4);
}

TEST(Optimal, Examples) {
  EXPECT_EQ(optimal_iterations(1), 0);
  EXPECT_EQ(optimal_iterations(4), 1);
  EXPECT_EQ(optimal_iterations(128), 8);
}

TEST(Optimal, MatchesFirstLobeArgmax) {
  for (std::int64_t n = 1; n <= 4096; ++n) {
    ASSERT_EQ(optimal_iterations(n), brute_argmax(n, first_lobe_end(n))) << n;
  }
}

TEST(Optimal, WiderWindowReachesLaterLobesForSmallN) {
  // Over 0..ceil(2 sqrt N) a later, taller lobe wins for a handful of small N;
  // everywhere else the first maximum is also the window maximum.
  std::vector<std::int64_t> differ;
  for (std::int64_t n = 2; n <= 4096; ++n) {
    if (optimal_iterations(n) != brute_argmax(n, window_end(n))) differ.push_back(n);
  }
  EXPECT_EQ(differ, (std::vector<std::int64_t>{6, 7, 8, 13, 14, 17, 26}));
}

TEST(Sweep, PaperFigure) {
  const auto rows = sweep(128, 20);
  ASSERT_EQ(rows.size(), 21u);
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].c, static_cast<std::int64_t>(i));
    EXPECT_LT(std::abs(rows[i].p_recurrence - rows[i].p_closed), 1e-9);
    if (rows[i].p_closed > rows[best].p_closed) best = i;
  }
  EXPECT_EQ(best, 8u);
  for (std::size_t c = 8; c < 12; ++c) EXPECT_GT(rows[c].p_closed, rows[c + 1].p_closed);
  EXPECT_NEAR(rows[0].p_recurrence, 1.0 / 128, 1e-15);
}

TEST(Sweep, PeriodicForFour) {
  const auto rows = sweep(4, 6);
  // sin^2((2C+1) pi/6): 1/4, 1, 1/4, 1/4, 1, 1/4, 1/4.
  const double expected[] = {0.25, 1, 0.25, 0.25, 1, 0.25, 0.25};
  for (std::size_t c = 0; c <= 6; ++c) EXPECT_NEAR(rows[c].p_recurrence, expected[c], 1e-12) << c;
}

TEST(Engine, IndependentOfMarkedIndex) {
  for (std::int64_t n = 1; n <= 16; ++n) {
    for (std::int64_t c : {0, 1, 2, 5}) {
      const auto first = build_grover_program({n, 0, c});
      const double p0 = wp(first.program, first.post, first.env);
      for (std::int64_t x0 = 1; x0 < n; ++x0) {
        const auto inst = build_grover_program({n, x0, c});
        EXPECT_NEAR(wp(inst.program, inst.post, inst.env), p0, 1e-12) << n << " " << x0 << " " << c;
      }
    }
  }
}

TEST(Engine, ThreeWayAgreement) {
  for (std::int64_t n : {2, 4, 8, 16, 64, 128, 1024}) {
    for (std::int64_t c = 0; c <= 25; ++c) {
      const auto inst = build_grover_program({n, 0, c});
      const double engine = wp(inst.program, inst.post, inst.env);
      const double rec = success_prob_recurrence(n, c);
      EXPECT_NEAR(engine, rec, 1e-9) << n << " " << c;
      EXPECT_NEAR(rec, success_prob_closed(n, c), 1e-9) << n << " " << c;
    }
  }
}
