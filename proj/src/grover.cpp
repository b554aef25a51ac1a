#include "pwp/grover.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pwp {

std::string to_string(const Rational& q) { return q.get_str(); }

namespace grover {

void Params::validate() const {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  if (x0 < 0 || x0 >= n) throw std::invalid_argument("x0 must lie in [0, N)");
  if (c < 0) throw std::invalid_argument("C must be >= 0");
}

std::string_view program_source() {
  return "S := (lam i | 0 <= i < N . 1 / sqrt(N));\n"
         "do C times\n"
         "  S := (lam i | 0 <= i < N . S(i) - 2 * f(i) * S(i));\n"
         "  S := (lam i | 0 <= i < N . 2 * mean(S) - S(i))\n"
         "od;\n"
         "S := classical(i, N) @ norm2(S(i)) for i in 0 .. N";
}

std::string_view success_post_source() { return "S = classical(x0, N)"; }

Instance build_grover_program(const Params& p) {
  p.validate();
  Env env;
  env.set("N", Value(Integer(static_cast<long>(p.n))));
  env.set("C", Value(Integer(static_cast<long>(p.c))));
  env.set("x0", Value(Integer(static_cast<long>(p.x0))));
  env.set("f", eval(parse_expr("(lam i | 0 <= i < N . i = x0)"), env));
  return Instance{parse(program_source()), std::move(env), parse_expr(success_post_source())};
}

namespace {

void check(std::int64_t n, std::int64_t c) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  if (c < 0) throw std::invalid_argument("C must be >= 0");
}

}  // namespace

std::vector<AB> recurrence_table(std::int64_t n, std::int64_t cmax) {
  check(n, cmax);
  const Rational big_n(static_cast<long>(n));
  std::vector<AB> rows;
  rows.reserve(static_cast<std::size_t>(cmax) + 1);
  rows.push_back({Rational(0), Rational(1)});
  for (std::int64_t i = 0; i < cmax; ++i) {
    const AB& prev = rows.back();
    Rational a = prev.a + 2 * prev.b;
    Rational b = (big_n * prev.b - 2 * prev.a - 4 * prev.b) / big_n;
    rows.push_back({std::move(a), std::move(b)});
  }
  return rows;
}

AB recurrence_AB(std::int64_t n, std::int64_t c) { return recurrence_table(n, c).back(); }

Rational success_prob_exact(std::int64_t n, std::int64_t c) {
  const AB ab = recurrence_AB(n, c);
  const Rational s = ab.a + ab.b;
  return Rational(s * s / Rational(static_cast<long>(n)));
}

double success_prob_recurrence(std::int64_t n, std::int64_t c) { return success_prob_exact(n, c).get_d(); }

double theta(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  return std::asin(1.0 / std::sqrt(static_cast<double>(n)));
}

double success_prob_closed(std::int64_t n, std::int64_t c) {
  check(n, c);
  const double s = std::sin(static_cast<double>(2 * c + 1) * theta(n));
  return s * s;
}

double optimal_real(std::int64_t n) { return std::numbers::pi / (4.0 * theta(n)) - 0.5; }

std::int64_t optimal_iterations(std::int64_t n) {
  const double h = optimal_real(n);
  const auto lo = static_cast<std::int64_t>(std::floor(h));
  const std::int64_t hi = lo + 1;
  const double dlo = h - static_cast<double>(lo);
  const double dhi = static_cast<double>(hi) - h;
  if (std::abs(dlo - dhi) > kTieTolerance) return dlo < dhi ? lo : hi;
  const double plo = success_prob_closed(n, lo);
  const double phi = success_prob_closed(n, hi);
  if (std::abs(plo - phi) > kTieTolerance) return plo > phi ? lo : hi;
  return lo;
}

std::vector<SweepRow> sweep(std::int64_t n, std::int64_t cmax) {
  const auto table = recurrence_table(n, cmax);
  const Rational big_n(static_cast<long>(n));
  std::vector<SweepRow> rows;
  rows.reserve(table.size());
  for (std::size_t c = 0; c < table.size(); ++c) {
    const Rational s = table[c].a + table[c].b;
    const Rational p = s * s / big_n;
    const auto ci = static_cast<std::int64_t>(c);
    rows.push_back({ci, p.get_d(), success_prob_closed(n, ci)});
  }
  return rows;
}

}  // namespace grover
}  // namespace pwp
