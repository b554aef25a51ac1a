#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pwp/lang.hpp"

namespace pwp {

// Exact fraction, always in lowest terms with a positive denominator.
using Rational = mpq_class;

std::string to_string(const Rational& q);

namespace grover {

struct Params {
  std::int64_t n = 1;   // search-space size, >= 1
  std::int64_t x0 = 0;  // marked argument, 0 <= x0 < n
  std::int64_t c = 0;   // iteration count, >= 0

  // Throws std::invalid_argument when a bound is violated.
  void validate() const;
};

// The parametric source of the search program: Init; do C times Body od;
// Measure. N, C, x0 and the oracle f are free variables.
std::string_view program_source();

// Post-expectation S = classical(x0, N): the marked state was observed.
std::string_view success_post_source();

struct Instance {
  Program program;
  Env env;   // binds N, C, x0 and f = [i = x0] tabulated over 0..N-1
  Expr post;
};

Instance build_grover_program(const Params& p);

struct AB {
  Rational a;
  Rational b;
};

// A_0 = 0, B_0 = 1, A_{i+1} = A_i + 2 B_i, B_{i+1} = (N B_i - 2 A_i - 4 B_i) / N.
AB recurrence_AB(std::int64_t n, std::int64_t c);

// All pairs (A_0, B_0) .. (A_cmax, B_cmax).
std::vector<AB> recurrence_table(std::int64_t n, std::int64_t cmax);

// (A_C + B_C)^2 / N, computed exactly and rounded once.
double success_prob_recurrence(std::int64_t n, std::int64_t c);
Rational success_prob_exact(std::int64_t n, std::int64_t c);

// arcsin(1 / sqrt(N)).
double theta(std::int64_t n);

// sin^2((2C + 1) theta_N).
double success_prob_closed(std::int64_t n, std::int64_t c);

// pi / (4 theta_N) - 1/2, the real-valued first maximum.
double optimal_real(std::int64_t n);

// Tolerance under which two candidate distances or probabilities are a tie.
inline constexpr double kTieTolerance = 1e-12;

// The whole number closest to optimal_real(n); on a tie, the candidate with
// the larger closed-form probability, then the smaller count.
std::int64_t optimal_iterations(std::int64_t n);

struct SweepRow {
  std::int64_t c;
  double p_recurrence;
  double p_closed;
};

// Rows for C = 0..cmax in ascending order.
std::vector<SweepRow> sweep(std::int64_t n, std::int64_t cmax);

}  // namespace grover
}  // namespace pwp
