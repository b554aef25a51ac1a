#include "pwp/series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pwp::series {

namespace {

std::vector<Rational> shared_denominator(const Rational& n) { return {n, 2 * (2 - n), n}; }

void check_n(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
}

}  // namespace

std::pair<RationalFunction, RationalFunction> gf_pair(std::int64_t n) {
  check_n(n);
  const Rational big_n(static_cast<long>(n));
  RationalFunction a{{Rational(0), 2 * big_n}, shared_denominator(big_n)};
  RationalFunction b{{big_n, -big_n}, shared_denominator(big_n)};
  return {std::move(a), std::move(b)};
}

RationalFunction gf_sum(std::int64_t n) {
  check_n(n);
  const Rational big_n(static_cast<long>(n));
  return {{big_n, big_n}, shared_denominator(big_n)};
}

std::vector<Rational> series_coeffs(const RationalFunction& rf, std::size_t k) {
  if (k < 1) throw std::invalid_argument("need at least one coefficient");
  if (rf.denominator.empty() || rf.denominator[0] == 0) {
    throw std::invalid_argument("denominator has a zero constant term");
  }
  std::vector<Rational> c;
  c.reserve(k);
  for (std::size_t m = 0; m < k; ++m) {
    Rational acc = m < rf.numerator.size() ? rf.numerator[m] : Rational(0);
    for (std::size_t j = 1; j < rf.denominator.size() && j <= m; ++j) {
      acc -= rf.denominator[j] * c[m - j];
    }
    c.push_back(Rational(acc / rf.denominator[0]));
  }
  return c;
}

namespace {

void check_angle(double theta) {
  if (!(theta > 0.0 && theta <= std::numbers::pi / 2)) {
    throw std::invalid_argument("theta must lie in (0, pi/2]");
  }
}

}  // namespace

KernelPair dirichlet_check(std::int64_t c, double theta) {
  check_angle(theta);
  if (c < 0) throw std::invalid_argument("C must be >= 0");
  double sum = 1.0;
  for (std::int64_t j = 1; j <= c; ++j) sum += 2.0 * std::cos(2.0 * static_cast<double>(j) * theta);
  const double kernel = std::sin(static_cast<double>(2 * c + 1) * theta) / std::sin(theta);
  return {sum, kernel};
}

std::vector<KernelPair> dirichlet_table(std::int64_t cmax, double theta) {
  check_angle(theta);
  if (cmax < 0) throw std::invalid_argument("C must be >= 0");
  std::vector<KernelPair> rows;
  rows.reserve(static_cast<std::size_t>(cmax) + 1);
  const double s = std::sin(theta);
  double sum = 1.0;
  for (std::int64_t c = 0; c <= cmax; ++c) {
    if (c > 0) sum += 2.0 * std::cos(2.0 * static_cast<double>(c) * theta);
    rows.push_back({sum, std::sin(static_cast<double>(2 * c + 1) * theta) / s});
  }
  return rows;
}

}  // namespace pwp::series
