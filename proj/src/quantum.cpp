#include "pwp/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pwp/errors.hpp"
#include "pwp/expr.hpp"

namespace pwp::quantum {

namespace {

double sum_norm2(std::span<const Complex> amps) {
  double acc = 0.0;
  for (const auto& a : amps) acc += norm2(a);
  return acc;
}

void check_dimension(std::size_t n) {
  if (n < 1) throw IndexOutOfRange("state dimension must be >= 1");
}

void check_index(std::size_t i, std::size_t n) {
  if (i >= n) {
    throw IndexOutOfRange("index " + std::to_string(i) + " outside 0.." + std::to_string(n));
  }
}

void check_matrix_size(std::size_t n) {
  check_dimension(n);
  if (n > kMaxMatrixSize) {
    throw std::length_error("matrices are limited to N <= " + std::to_string(kMaxMatrixSize));
  }
}

}  // namespace

QuantumState::QuantumState(std::vector<Complex> amplitudes, double tol) : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw NormalizationError("quantum state must have at least one amplitude");
  const double total = sum_norm2(amps_);
  if (!(std::abs(total - 1.0) < tol)) {
    throw NormalizationError("state not normalized: sum of square norms is " + std::to_string(total));
  }
}

double QuantumState::norm_squared() const noexcept { return sum_norm2(amps_); }

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex{1.0, 0.0};
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (rhs.n_ != n_) throw std::invalid_argument("matrix dimension mismatch");
  Matrix out(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t k = 0; k < n_; ++k) {
      const Complex a = (*this)(r, k);
      if (a == Complex{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < n_; ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

std::vector<Complex> Matrix::operator*(std::span<const Complex> v) const {
  if (v.size() != n_) throw std::invalid_argument("matrix/vector dimension mismatch");
  std::vector<Complex> out(n_, Complex{0.0, 0.0});
  for (std::size_t r = 0; r < n_; ++r) {
    Complex acc{0.0, 0.0};
    for (std::size_t c = 0; c < n_; ++c) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

Matrix Matrix::adjoint() const {
  Matrix out(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = 0; c < n_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

QuantumState uniform_state(std::size_t n) {
  check_dimension(n);
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  return QuantumState(std::vector<Complex>(n, Complex{a, 0.0}));
}

QuantumState classical_state(std::size_t i, std::size_t n) {
  check_dimension(n);
  check_index(i, n);
  std::vector<Complex> amps(n, Complex{0.0, 0.0});
  amps[i] = Complex{1.0, 0.0};
  return QuantumState(std::move(amps));
}

Complex state_mean(const QuantumState& s) {
  Complex acc{0.0, 0.0};
  for (const auto& a : s.amplitudes()) acc += a;
  return acc / static_cast<double>(s.size());
}

std::vector<double> measure_probs(const QuantumState& s) {
  if (!(std::abs(s.norm_squared() - 1.0) < kMeasureTolerance)) {
    throw NormalizationError("cannot measure a non-normalized state");
  }
  std::vector<double> p;
  p.reserve(s.size());
  for (const auto& a : s.amplitudes()) p.push_back(norm2(a));
  return p;
}

bool check_unitary(const Matrix& u, double tol) {
  const Matrix ud = u.adjoint();
  const Matrix left = u * ud;
  const Matrix right = ud * u;
  for (std::size_t r = 0; r < u.size(); ++r) {
    for (std::size_t c = 0; c < u.size(); ++c) {
      const Complex id{r == c ? 1.0 : 0.0, 0.0};
      if (!(std::abs(left(r, c) - id) < tol) || !(std::abs(right(r, c) - id) < tol)) return false;
    }
  }
  return true;
}

Matrix oracle_matrix(std::size_t n, std::size_t x0) {
  check_matrix_size(n);
  check_index(x0, n);
  Matrix m = Matrix::identity(n);
  m(x0, x0) = Complex{-1.0, 0.0};
  return m;
}

Matrix diffusion_matrix(std::size_t n) {
  check_matrix_size(n);
  Matrix m(n);
  const double off = 2.0 / static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = Complex{r == c ? off - 1.0 : off, 0.0};
  }
  return m;
}

Matrix grover_step_matrix(std::size_t n, std::size_t x0) {
  return diffusion_matrix(n) * oracle_matrix(n, x0);
}

QuantumState apply_oracle(const QuantumState& s, std::size_t x0) {
  check_index(x0, s.size());
  std::vector<Complex> amps(s.amplitudes().begin(), s.amplitudes().end());
  amps[x0] = -amps[x0];
  return QuantumState(std::move(amps));
}

QuantumState apply_diffusion(const QuantumState& s) {
  const Complex twice_mean = 2.0 * state_mean(s);
  std::vector<Complex> amps;
  amps.reserve(s.size());
  for (const auto& a : s.amplitudes()) amps.push_back(twice_mean - a);
  return QuantumState(std::move(amps));
}

QuantumState grover_step(const QuantumState& s, std::size_t x0) {
  return apply_diffusion(apply_oracle(s, x0));
}

QuantumState apply(const Matrix& u, const QuantumState& s) { return QuantumState(u * s.amplitudes()); }

}  // namespace pwp::quantum
