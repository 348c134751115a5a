#include "qpst/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qpst {

namespace {

Eigen::Index as_index(std::size_t v) { return static_cast<Eigen::Index>(v); }

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
  }
}

// Offsets of every assignment of digits to `sites` (enumerated with sites[0]
// most significant) inside the full n-site index.
std::vector<std::size_t> site_offsets(std::span<const std::size_t> sites, std::size_t d,
                                      std::size_t n) {
  std::vector<std::size_t> weight(sites.size());
  for (std::size_t k = 0; k < sites.size(); ++k) {
    std::size_t w = 1;
    for (std::size_t s = sites[k] + 1; s < n; ++s) w *= d;
    weight[k] = w;
  }
  std::size_t count = 1;
  for (std::size_t k = 0; k < sites.size(); ++k) count *= d;

  std::vector<std::size_t> offsets(count, 0);
  for (std::size_t a = 0; a < count; ++a) {
    std::size_t rem = a;
    std::size_t off = 0;
    for (std::size_t k = sites.size(); k-- > 0;) {
      off += (rem % d) * weight[k];
      rem /= d;
    }
    offsets[a] = off;
  }
  return offsets;
}

std::vector<std::size_t> validated_complement(std::span<const std::size_t> keep, std::size_t n) {
  if (keep.empty()) throw ArgumentError("partial_trace: keep set is empty");
  std::vector<bool> seen(n, false);
  for (std::size_t s : keep) {
    if (s >= n) {
      throw ArgumentError("partial_trace: site " + std::to_string(s) + " out of range for n=" +
                          std::to_string(n));
    }
    if (seen[s]) throw ArgumentError("partial_trace: duplicate site " + std::to_string(s));
    seen[s] = true;
  }
  std::vector<std::size_t> rest;
  for (std::size_t s = 0; s < n; ++s) {
    if (!seen[s]) rest.push_back(s);
  }
  return rest;
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : m_(Eigen::MatrixXcd::Zero(as_index(rows), as_index(cols))) {}

CMatrix::CMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  m_ = Eigen::MatrixXcd::Zero(as_index(r), as_index(c));
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw ArgumentError("CMatrix: ragged initializer list");
    std::size_t j = 0;
    for (const Complex& v : row) m_(as_index(i), as_index(j++)) = v;
    ++i;
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  return CMatrix(Eigen::MatrixXcd::Identity(as_index(n), as_index(n)));
}

CMatrix CMatrix::diagonal(std::span<const Complex> entries) {
  CMatrix out(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) out.m_(as_index(i), as_index(i)) = entries[i];
  return out;
}

Complex CMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows() || c >= cols()) {
    throw std::out_of_range("CMatrix::at(" + std::to_string(r) + ", " + std::to_string(c) +
                            ") on " + std::to_string(rows()) + "x" + std::to_string(cols()));
  }
  return m_(as_index(r), as_index(c));
}

Complex& CMatrix::at(std::size_t r, std::size_t c) {
  if (r >= rows() || c >= cols()) {
    throw std::out_of_range("CMatrix::at(" + std::to_string(r) + ", " + std::to_string(c) +
                            ") on " + std::to_string(rows()) + "x" + std::to_string(cols()));
  }
  return m_(as_index(r), as_index(c));
}

CMatrix CMatrix::adjoint() const { return CMatrix(Eigen::MatrixXcd(m_.adjoint())); }

Complex CMatrix::trace() const {
  if (!is_square()) throw ArgumentError("CMatrix::trace: matrix is not square");
  return m_.trace();
}

double CMatrix::frobenius_norm() const { return m_.norm(); }

double CMatrix::max_abs_diff(const CMatrix& other) const {
  require_same_shape(*this, other, "max_abs_diff");
  if (m_.size() == 0) return 0.0;
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

bool CMatrix::is_hermitian(double tol) const {
  if (!is_square()) return false;
  if (m_.size() == 0) return true;
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool CMatrix::is_unitary(double tol) const {
  if (!is_square()) return false;
  const Eigen::MatrixXcd prod = m_.adjoint() * m_;
  return (prod - Eigen::MatrixXcd::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff() <= tol;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  require_same_shape(*this, rhs, "operator+");
  m_ += rhs.m_;
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  require_same_shape(*this, rhs, "operator-");
  m_ -= rhs.m_;
  return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ArgumentError("operator*: inner dimensions " + std::to_string(a.cols()) + " and " +
                        std::to_string(b.rows()) + " differ");
  }
  return CMatrix(Eigen::MatrixXcd(a.m_ * b.m_));
}

CVector operator*(const CMatrix& a, const CVector& v) {
  if (a.cols() != static_cast<std::size_t>(v.size())) {
    throw ArgumentError("operator*: matrix/vector dimension mismatch");
  }
  return a.m_ * v;
}

std::size_t register_dimension(std::size_t d, std::size_t n, std::size_t cap) {
  if (d < 2) throw ArgumentError("register_dimension: d must be >= 2");
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (dim > cap / d) {
      throw DimensionError("register dimension " + std::to_string(d) + "^" + std::to_string(n) +
                           " exceeds cap " + std::to_string(cap));
    }
    dim *= d;
  }
  return dim;
}

std::size_t digits_to_index(std::span<const std::size_t> digits, std::size_t d) {
  std::size_t index = 0;
  for (std::size_t q : digits) {
    if (q >= d) {
      throw ArgumentError("digit " + std::to_string(q) + " out of range for d=" +
                          std::to_string(d));
    }
    index = index * d + q;
  }
  return index;
}

std::vector<std::size_t> index_to_digits(std::size_t index, std::size_t d, std::size_t n) {
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t s = n; s-- > 0;) {
    digits[s] = index % d;
    index /= d;
  }
  if (index != 0) throw ArgumentError("index_to_digits: index exceeds d^n");
  return digits;
}

// ---------------------------------------------------------------------------
// PureState / DensityMatrix

PureState::PureState(std::size_t d, std::size_t n, CVector amplitudes)
    : d_(d), n_(n), amps_(std::move(amplitudes)) {
  if (n_ < 1) throw ArgumentError("PureState: n must be >= 1");
  const std::size_t dim = register_dimension(d_, n_, std::numeric_limits<std::size_t>::max());
  if (static_cast<std::size_t>(amps_.size()) != dim) {
    throw ArgumentError("PureState: expected " + std::to_string(dim) + " amplitudes, got " +
                        std::to_string(amps_.size()));
  }
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw ArgumentError("PureState: squared norm " + std::to_string(norm2) + " is not 1");
  }
}

PureState PureState::normalized(std::size_t d, std::size_t n, CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ArgumentError("PureState::normalized: zero or non-finite vector");
  }
  amplitudes /= norm;
  return PureState(d, n, std::move(amplitudes));
}

Complex PureState::amplitude(std::size_t index) const {
  if (index >= dim()) throw std::out_of_range("PureState::amplitude: index out of range");
  return amps_(as_index(index));
}

DensityMatrix PureState::density() const {
  return DensityMatrix(d_, n_, CMatrix(Eigen::MatrixXcd(amps_ * amps_.adjoint())));
}

DensityMatrix::DensityMatrix(std::size_t d, std::size_t n, CMatrix matrix)
    : d_(d), n_(n), matrix_(std::move(matrix)) {
  if (n_ < 1) throw ArgumentError("DensityMatrix: n must be >= 1");
  const std::size_t dim = register_dimension(d_, n_, std::numeric_limits<std::size_t>::max());
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw ArgumentError("DensityMatrix: expected " + std::to_string(dim) + "x" +
                        std::to_string(dim) + " matrix");
  }
  if (!matrix_.is_hermitian(kHermitianTolerance)) {
    throw ArgumentError("DensityMatrix: matrix is not Hermitian");
  }
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kNormTolerance) {
    throw ArgumentError("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
  }
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return matrix_.eigen().squaredNorm();
}

std::vector<double> DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_.eigen(),
                                                         Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

bool DensityMatrix::is_positive_semidefinite(double tol) const {
  const auto ev = eigenvalues();
  return ev.empty() || ev.front() >= -tol;
}

// ---------------------------------------------------------------------------

CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t cap) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > cap || cols > cap) {
    throw DimensionError("kron: result " + std::to_string(rows) + "x" + std::to_string(cols) +
                         " exceeds cap " + std::to_string(cap));
  }
  const Eigen::MatrixXcd& A = a.eigen();
  const Eigen::MatrixXcd& B = b.eigen();
  Eigen::MatrixXcd out(as_index(rows), as_index(cols));
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return CMatrix(std::move(out));
}

HermitianSpectrum::HermitianSpectrum(const CMatrix& h, double tol) {
  if (!h.is_square()) throw PreconditionError("HermitianSpectrum: matrix is not square");
  if (!h.is_hermitian(tol)) throw PreconditionError("HermitianSpectrum: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.eigen());
  if (solver.info() != Eigen::Success) {
    throw PreconditionError("HermitianSpectrum: eigendecomposition did not converge");
  }
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

CMatrix HermitianSpectrum::propagator(double t) const {
  const Eigen::VectorXcd phases =
      (values_.cast<Complex>() * Complex(0.0, -t)).array().exp().matrix();
  return CMatrix(Eigen::MatrixXcd(vectors_ * phases.asDiagonal() * vectors_.adjoint()));
}

CVector HermitianSpectrum::evolve(const CVector& v, double t) const {
  if (v.size() != values_.size()) throw ArgumentError("HermitianSpectrum::evolve: size mismatch");
  CVector coeffs = vectors_.adjoint() * v;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs(k) *= std::exp(Complex(0.0, -values_(k) * t));
  }
  return vectors_ * coeffs;
}

CMatrix mat_exp_hermitian(const CMatrix& h, double t) {
  return HermitianSpectrum(h).propagator(t);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const std::size_t d = rho.d();
  const std::size_t n = rho.n();
  const auto rest = validated_complement(keep, n);
  const auto keep_off = site_offsets(keep, d, n);
  const auto rest_off = site_offsets(rest, d, n);
  const Eigen::MatrixXcd& full = rho.matrix().eigen();

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(as_index(keep_off.size()),
                                                as_index(keep_off.size()));
  for (std::size_t a = 0; a < keep_off.size(); ++a) {
    for (std::size_t b = 0; b < keep_off.size(); ++b) {
      Complex acc = 0.0;
      for (std::size_t e : rest_off) {
        acc += full(as_index(keep_off[a] + e), as_index(keep_off[b] + e));
      }
      out(as_index(a), as_index(b)) = acc;
    }
  }
  // Remove rounding asymmetry so the container invariant holds exactly.
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(d, keep.size(), CMatrix(std::move(out)));
}

DensityMatrix partial_trace(const PureState& psi, std::span<const std::size_t> keep) {
  const std::size_t d = psi.d();
  const std::size_t n = psi.n();
  const auto rest = validated_complement(keep, n);
  const auto keep_off = site_offsets(keep, d, n);
  const auto rest_off = site_offsets(rest, d, n);

  Eigen::MatrixXcd m(as_index(keep_off.size()), as_index(rest_off.size()));
  for (std::size_t a = 0; a < keep_off.size(); ++a) {
    for (std::size_t e = 0; e < rest_off.size(); ++e) {
      m(as_index(a), as_index(e)) = psi.amplitudes()(as_index(keep_off[a] + rest_off[e]));
    }
  }
  Eigen::MatrixXcd out = m * m.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(d, keep.size(), CMatrix(std::move(out)));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : rho.eigenvalues()) {
    if (lambda > 1e-15) s -= lambda * std::log2(lambda);
  }
  return std::max(0.0, s);
}

}  // namespace qpst
