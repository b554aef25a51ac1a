#pragma once

#include <string>

#include "pwp/value.hpp"

namespace pwp {

// printf("%.*g"): the CSV and CLI output format for reals.
std::string format_sig(double x, int digits = 12);

// "a+bj" / "a-bj" using format_sig for each part; plain real when im == 0.
std::string format_complex(const Complex& z, int digits = 12);

// Shortest decimal text that reads back to exactly `x`; always contains a
// '.' or an exponent so it lexes as a real literal.
std::string format_exact(double x);

}  // namespace pwp
