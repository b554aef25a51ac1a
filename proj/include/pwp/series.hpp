#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pwp/grover.hpp"

namespace pwp::series {

// numerator(z) / denominator(z) with coefficients listed from z^0 upward.
struct RationalFunction {
  std::vector<Rational> numerator;
  std::vector<Rational> denominator;  // denominator[0] != 0
};

// Generating functions of A_i and B_i:
//   A(z) = 2N z / (N + 2(2 - N) z + N z^2),  B(z) = (N - N z) / (same).
std::pair<RationalFunction, RationalFunction> gf_pair(std::int64_t n);

// A(z) + B(z) = (N + N z) / (N + 2(2 - N) z + N z^2).
RationalFunction gf_sum(std::int64_t n);

// First k power-series coefficients, from the linear recurrence
//   den[0] c_m = num[m] - sum_{j>=1} den[j] c_{m-j}.
// Throws std::invalid_argument on a zero constant term or k < 1.
std::vector<Rational> series_coeffs(const RationalFunction& rf, std::size_t k);

struct KernelPair {
  double sum;     // 1 + 2 sum_{j=1}^{C} cos(2 j theta)
  double kernel;  // sin((2C + 1) theta) / sin(theta)
};

// Throws std::invalid_argument unless 0 < theta <= pi/2 and c >= 0.
KernelPair dirichlet_check(std::int64_t c, double theta);

// dirichlet_check for every C in 0..cmax, with the cosine sum accumulated
// incrementally.
std::vector<KernelPair> dirichlet_table(std::int64_t cmax, double theta);

}  // namespace pwp::series
