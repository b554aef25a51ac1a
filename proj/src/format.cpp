#include "pwp/format.hpp"

#include <charconv>
#include <cstdio>

namespace pwp {

std::string format_sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string format_complex(const Complex& z, int digits) {
  if (z.imag() == 0.0) return format_sig(z.real(), digits);
  std::string out = format_sig(z.real(), digits);
  out += z.imag() < 0 ? '-' : '+';
  out += format_sig(std::abs(z.imag()), digits);
  out += 'j';
  return out;
}

std::string format_exact(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  std::string out(buf, res.ptr);
  if (out.find_first_of(".en") == std::string::npos) out += ".0";
  return out;
}

}  // namespace pwp
