#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pwp/value.hpp"

namespace pwp::quantum {

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kMeasureTolerance = 1e-6;

// Dense amplitude vector S = sum_i alpha_i |i>. Constructors check
// normalization; nothing is ever renormalized.
class QuantumState {
 public:
  // Throws NormalizationError if |sum |a_i|^2 - 1| >= tol, or if empty.
  explicit QuantumState(std::vector<Complex> amplitudes, double tol = kNormTolerance);

  std::size_t size() const noexcept { return amps_.size(); }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  double norm_squared() const noexcept;

  AmpVector to_value() const { return AmpVector(amps_); }

 private:
  std::vector<Complex> amps_;
};

class Matrix {
 public:
  explicit Matrix(std::size_t n) : n_(n), data_(n * n, Complex{0.0, 0.0}) {}
  static Matrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  Matrix operator*(const Matrix& rhs) const;
  std::vector<Complex> operator*(std::span<const Complex> v) const;
  Matrix adjoint() const;

 private:
  std::size_t n_;
  std::vector<Complex> data_;
};

// Largest materialized matrix dimension.
inline constexpr std::size_t kMaxMatrixSize = 1024;

QuantumState uniform_state(std::size_t n);
QuantumState classical_state(std::size_t i, std::size_t n);
Complex state_mean(const QuantumState& s);

// p_i = |alpha_i|^2. Requires s normalized within kMeasureTolerance.
std::vector<double> measure_probs(const QuantumState& s);

// max |(U U^dagger - I)_rc| and max |(U^dagger U - I)_rc| both below tol.
bool check_unitary(const Matrix& u, double tol);

// Oracle phase flip O = I - 2 e_x0 e_x0^T (the first half of the loop body).
Matrix oracle_matrix(std::size_t n, std::size_t x0);
// Inversion about the mean D = (2/N) J - I (the second half).
Matrix diffusion_matrix(std::size_t n);
// D * O: one full loop-body iteration.
Matrix grover_step_matrix(std::size_t n, std::size_t x0);

// O(N) functional forms of the same maps.
QuantumState apply_oracle(const QuantumState& s, std::size_t x0);
QuantumState apply_diffusion(const QuantumState& s);
QuantumState grover_step(const QuantumState& s, std::size_t x0);
QuantumState apply(const Matrix& u, const QuantumState& s);

}  // namespace pwp::quantum
