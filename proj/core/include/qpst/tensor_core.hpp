#pragma once

// Dense complex linear algebra shared by every other module: the CMatrix
// operator type, the PureState / DensityMatrix containers, Kronecker
// products, unitary propagators of Hermitian matrices and partial traces.
//
// Basis convention (global): for an n-site register of d-level qudits the
// basis index of |q_0 q_1 ... q_{n-1}> is sum_s q_s * d^(n-1-s), i.e. site 0
// is the leftmost, most significant digit.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qpst/errors.hpp"

namespace qpst {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;

inline constexpr std::size_t kDefaultDimensionCap = 4096;

// Tolerances used by the container invariants.
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  explicit CMatrix(Eigen::MatrixXcd m);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const Complex> entries);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(m_.cols()); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(m_.size()); }
  bool is_square() const noexcept { return m_.rows() == m_.cols(); }

  // Bounds-checked; throws std::out_of_range.
  Complex at(std::size_t r, std::size_t c) const;
  Complex& at(std::size_t r, std::size_t c);

  const Eigen::MatrixXcd& eigen() const noexcept { return m_; }
  Eigen::MatrixXcd& eigen() noexcept { return m_; }

  CMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  // max_{r,c} |a(r,c) - b(r,c)|; shapes must agree.
  double max_abs_diff(const CMatrix& other) const;
  bool is_hermitian(double tol = kHermitianTolerance) const;
  bool is_unitary(double tol = 1e-10) const;

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(Complex s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CVector operator*(const CMatrix& a, const CVector& v);

 private:
  Eigen::MatrixXcd m_;
};

// d^n with an overflow / cap check.
std::size_t register_dimension(std::size_t d, std::size_t n,
                               std::size_t cap = kDefaultDimensionCap);

std::size_t digits_to_index(std::span<const std::size_t> digits, std::size_t d);
std::vector<std::size_t> index_to_digits(std::size_t index, std::size_t d, std::size_t n);

class DensityMatrix;

// Normalized state vector of n qudits with d levels each.
class PureState {
 public:
  // Throws ArgumentError unless amplitudes.size() == d^n and the norm is 1
  // within kNormTolerance.
  PureState(std::size_t d, std::size_t n, CVector amplitudes);

  // Scales `amplitudes` to unit norm first; zero vectors are rejected.
  static PureState normalized(std::size_t d, std::size_t n, CVector amplitudes);

  std::size_t d() const noexcept { return d_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amplitudes() const noexcept { return amps_; }
  Complex amplitude(std::size_t index) const;

  DensityMatrix density() const;

 private:
  std::size_t d_;
  std::size_t n_;
  CVector amps_;
};

// Hermitian, unit-trace operator on n qudits. Positivity is not re-checked
// on construction (O(dim^3)); use is_positive_semidefinite().
class DensityMatrix {
 public:
  DensityMatrix(std::size_t d, std::size_t n, CMatrix matrix);

  std::size_t d() const noexcept { return d_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }
  const CMatrix& matrix() const noexcept { return matrix_; }

  double purity() const;
  std::vector<double> eigenvalues() const;
  bool is_positive_semidefinite(double tol = kPositivityTolerance) const;

 private:
  std::size_t d_;
  std::size_t n_;
  CMatrix matrix_;
};

// Kronecker product a (x) b. The block (i, j) of the result is a(i,j) * b, so
// under the global convention `a` acts on the more significant sites.
CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t cap = kDefaultDimensionCap);

// Spectral decomposition h = V diag(lambda) V^dagger of a Hermitian matrix,
// reusable for any number of propagation times.
class HermitianSpectrum {
 public:
  // Throws PreconditionError if h is not square or not Hermitian within `tol`.
  explicit HermitianSpectrum(const CMatrix& h, double tol = 1e-10);

  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
  const Eigen::MatrixXcd& eigenvectors() const noexcept { return vectors_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(values_.size()); }

  // exp(-i h t).
  CMatrix propagator(double t) const;
  // exp(-i h t) v without forming the propagator.
  CVector evolve(const CVector& v, double t) const;

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXcd vectors_;
};

// U = exp(-i h t) via eigendecomposition of h.
CMatrix mat_exp_hermitian(const CMatrix& h, double t);

// Reduced state on `keep`, in the listed order (keep[0] becomes the most
// significant site of the result). Throws ArgumentError on empty, duplicate
// or out-of-range sites.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const PureState& psi, std::span<const std::size_t> keep);

// Von Neumann entropy in bits. Eigenvalues below 1e-15 contribute nothing.
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace qpst
