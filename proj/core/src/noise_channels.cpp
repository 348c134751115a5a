#include "qpst/noise_channels.hpp"

#include <cmath>
#include <string>

#include "qpst/qudit_states.hpp"

namespace qpst {

namespace {

double binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return c;
}

bool has_only_diagonal(const CMatrix& m) {
  const Eigen::MatrixXcd& e = m.eigen();
  for (Eigen::Index r = 0; r < e.rows(); ++r) {
    for (Eigen::Index c = 0; c < e.cols(); ++c) {
      if (r != c && e(r, c) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

// Stride of `site` in the big-endian register index.
std::size_t site_stride(std::size_t d, std::size_t n, std::size_t site) {
  std::size_t stride = 1;
  for (std::size_t s = site + 1; s < n; ++s) stride *= d;
  return stride;
}

}  // namespace

KrausChannel::KrausChannel(std::size_t d, std::vector<CMatrix> ops, double tol)
    : d_(d), ops_(std::move(ops)) {
  if (d_ < 2) throw ArgumentError("KrausChannel: d must be >= 2");
  if (ops_.empty()) throw ArgumentError("KrausChannel: need at least one Kraus operator");
  diagonal_ = true;
  for (const CMatrix& e : ops_) {
    if (e.rows() != d_ || e.cols() != d_) {
      throw ArgumentError("KrausChannel: Kraus operators must be " + std::to_string(d_) + "x" +
                          std::to_string(d_));
    }
    diagonal_ = diagonal_ && has_only_diagonal(e);
  }
  const double err = completeness_error();
  if (err > tol) {
    throw ArgumentError("KrausChannel: completeness violated by " + std::to_string(err));
  }
}

double KrausChannel::completeness_error() const {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d_),
                                                static_cast<Eigen::Index>(d_));
  for (const CMatrix& e : ops_) sum += e.eigen().adjoint() * e.eigen();
  return (sum - Eigen::MatrixXcd::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
}

WeylSpec::WeylSpec(std::size_t d_, Eigen::MatrixXd pi_) : d(d_), pi(std::move(pi_)) {
  if (d < 2) throw ArgumentError("WeylSpec: d must be >= 2");
  if (pi.rows() != static_cast<Eigen::Index>(d) || pi.cols() != static_cast<Eigen::Index>(d)) {
    throw ArgumentError("WeylSpec: probability matrix must be d x d");
  }
  for (Eigen::Index i = 0; i < pi.size(); ++i) {
    const double v = pi.data()[i];
    if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError("WeylSpec: probabilities must lie in [0,1]");
  }
  if (std::abs(pi.sum() - 1.0) > 1e-12) {
    throw ArgumentError("WeylSpec: probabilities must sum to 1");
  }
}

KrausChannel identity_channel(std::size_t d) {
  return KrausChannel(d, {CMatrix::identity(d)});
}

std::vector<double> phase_damping_weights(double p, std::size_t d) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError("phase damping: p must lie in [0,1], got " + std::to_string(p));
  }
  if (d < 2) throw ArgumentError("phase damping: d must be >= 2");
  const double lo = (1.0 - p) / 2.0;
  const double hi = (1.0 + p) / 2.0;
  std::vector<double> w(d);
  for (std::size_t i = 0; i < d; ++i) {
    w[i] = binomial(d - 1, i) * std::pow(lo, static_cast<double>(i)) *
           std::pow(hi, static_cast<double>(d - 1 - i));
  }
  return w;
}

KrausChannel phase_damping(double p, std::size_t d) {
  const auto w = phase_damping_weights(p, d);
  std::vector<CMatrix> ops;
  ops.reserve(d);
  for (std::size_t i = 0; i < d; ++i) ops.push_back(std::sqrt(w[i]) * clock_power(d, i));
  return KrausChannel(d, std::move(ops));
}

WeylSpec binomial_weyl_spec(double p, std::size_t d) {
  const auto w = phase_damping_weights(p, d);
  Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                             static_cast<Eigen::Index>(d));
  for (std::size_t n = 0; n < d; ++n) pi(0, static_cast<Eigen::Index>(n)) = w[n];
  return WeylSpec(d, std::move(pi));
}

KrausChannel weyl_channel(const WeylSpec& spec) {
  const WeylSpec checked(spec.d, spec.pi);
  const std::size_t d = checked.d;
  std::vector<CMatrix> ops;
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = 0; n < d; ++n) {
      const double prob = checked.pi(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
      if (prob > 0.0) ops.push_back(std::sqrt(prob) * (clock_power(d, n) * shift_power(d, m)));
    }
  }
  return KrausChannel(d, std::move(ops));
}

CMatrix process_matrix(const KrausChannel& ch) {
  const std::size_t d = ch.d();
  CMatrix out(d * d, d * d);
  for (const CMatrix& e : ch.ops()) {
    out += kron(e, CMatrix(Eigen::MatrixXcd(e.eigen().conjugate())));
  }
  return out;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch) {
  if (rho.dim() != ch.d()) {
    throw ArgumentError("apply_channel: state dimension " + std::to_string(rho.dim()) +
                        " does not match channel dimension " + std::to_string(ch.d()));
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.matrix().eigen().rows(),
                                                rho.matrix().eigen().cols());
  for (const CMatrix& e : ch.ops()) {
    out += e.eigen() * rho.matrix().eigen() * e.eigen().adjoint();
  }
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(rho.d(), rho.n(), CMatrix(std::move(out)));
}

DensityMatrix apply_channel_at(const DensityMatrix& rho, const KrausChannel& ch,
                               std::size_t site) {
  if (site >= rho.n()) {
    throw ArgumentError("apply_channel_at: site " + std::to_string(site) +
                        " out of range for n=" + std::to_string(rho.n()));
  }
  if (ch.d() != rho.d()) throw ArgumentError("apply_channel_at: channel dimension mismatch");

  const std::size_t d = rho.d();
  const auto dim = static_cast<Eigen::Index>(rho.dim());
  const auto stride = static_cast<Eigen::Index>(site_stride(d, rho.n(), site));
  const auto dd = static_cast<Eigen::Index>(d);
  const Eigen::MatrixXcd& in = rho.matrix().eigen();
  auto digit = [&](Eigen::Index idx) { return (idx / stride) % dd; };

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  if (ch.is_diagonal()) {
    // Entry (r, c) only picks up sum_i E_i[q_r] conj(E_i[q_c]).
    Eigen::MatrixXcd factor = Eigen::MatrixXcd::Zero(dd, dd);
    for (const CMatrix& e : ch.ops()) {
      const Eigen::VectorXcd diag = e.eigen().diagonal();
      factor += diag * diag.adjoint();
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      const Eigen::Index qc = digit(c);
      for (Eigen::Index r = 0; r < dim; ++r) out(r, c) = factor(digit(r), qc) * in(r, c);
    }
  } else {
    Eigen::MatrixXcd left(dim, dim);
    for (const CMatrix& op : ch.ops()) {
      const Eigen::MatrixXcd& e = op.eigen();
      // left = (I (x) E (x) I) rho
      for (Eigen::Index r = 0; r < dim; ++r) {
        const Eigen::Index qr = digit(r);
        const Eigen::Index base = r - qr * stride;
        left.row(r).setZero();
        for (Eigen::Index a = 0; a < dd; ++a) {
          if (e(qr, a) != Complex(0.0, 0.0)) left.row(r) += e(qr, a) * in.row(base + a * stride);
        }
      }
      // out += left (I (x) E^dagger (x) I)
      for (Eigen::Index c = 0; c < dim; ++c) {
        const Eigen::Index qc = digit(c);
        const Eigen::Index base = c - qc * stride;
        for (Eigen::Index b = 0; b < dd; ++b) {
          const Complex w = std::conj(e(qc, b));
          if (w != Complex(0.0, 0.0)) out.col(c) += w * left.col(base + b * stride);
        }
      }
    }
  }
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(rho.d(), rho.n(), CMatrix(std::move(out)));
}

}  // namespace qpst
