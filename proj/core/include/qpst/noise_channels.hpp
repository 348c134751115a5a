#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qpst/tensor_core.hpp"

namespace qpst {

// Single-qudit channel rho -> sum_i E_i rho E_i^dagger. Construction checks
// sum_i E_i^dagger E_i = I.
class KrausChannel {
 public:
  KrausChannel(std::size_t d, std::vector<CMatrix> ops, double tol = 1e-12);

  std::size_t d() const noexcept { return d_; }
  const std::vector<CMatrix>& ops() const noexcept { return ops_; }
  bool is_diagonal() const noexcept { return diagonal_; }

  // max |sum E^dagger E - I|.
  double completeness_error() const;

 private:
  std::size_t d_;
  std::vector<CMatrix> ops_;
  bool diagonal_ = false;
};

// Probabilities pi(m, n) of applying Z^n X^m.
struct WeylSpec {
  std::size_t d;
  Eigen::MatrixXd pi;

  WeylSpec(std::size_t d_, Eigen::MatrixXd pi_);
};

KrausChannel identity_channel(std::size_t d);

// C(d-1, i) ((1-p)/2)^i ((1+p)/2)^(d-1-i) for i = 0..d-1.
std::vector<double> phase_damping_weights(double p, std::size_t d);

// E_i = sqrt(w_i) Z^i with Z the clock matrix; p = 1 is the identity channel,
// p = 0 the strongest damping.
KrausChannel phase_damping(double p, std::size_t d);

// Weyl probabilities with pi(0, n) = phase_damping_weights(p, d)[n] and all
// shifted terms zero.
WeylSpec binomial_weyl_spec(double p, std::size_t d);

// Kraus operators sqrt(pi(m,n)) Z^n X^m for every pi(m,n) > 0.
KrausChannel weyl_channel(const WeylSpec& spec);

// Natural (process) matrix sum_i E_i (x) conj(E_i). Two channels act
// identically iff their process matrices agree.
CMatrix process_matrix(const KrausChannel& ch);

// Single-qudit application; rho must be d x d.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch);

// Applies the channel to qudit `site` of an n-site state.
DensityMatrix apply_channel_at(const DensityMatrix& rho, const KrausChannel& ch,
                               std::size_t site);

}  // namespace qpst
