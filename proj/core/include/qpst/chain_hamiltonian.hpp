#pragma once

#include <cstddef>
#include <vector>

#include "qpst/tensor_core.hpp"

namespace qpst {

// sqrt(i (n - i)) / 2 for link 1 <= i <= n-1. This profile makes the chain
// mirror symmetric with an equally spaced single-excitation spectrum.
double default_coupling(std::size_t i, std::size_t n);

// A 1D chain of n qudits with d levels and couplings J_1..J_{n-1}
// (link i joins sites i-1 and i in 0-based site numbering).
class ChainSpec {
 public:
  ChainSpec(std::size_t d, std::size_t n, std::vector<double> couplings);

  static ChainSpec with_default_couplings(std::size_t d, std::size_t n);
  static ChainSpec homogeneous(std::size_t d, std::size_t n, double coupling);

  std::size_t d() const noexcept { return d_; }
  std::size_t n() const noexcept { return n_; }
  const std::vector<double>& couplings() const noexcept { return couplings_; }
  // 1-based link index.
  double coupling(std::size_t link) const;
  std::size_t dim(std::size_t cap = kDefaultDimensionCap) const {
    return register_dimension(d_, n_, cap);
  }

  bool is_mirror_symmetric(double tol = 1e-14) const;

 private:
  std::size_t d_;
  std::size_t n_;
  std::vector<double> couplings_;
};

struct ChainHamiltonian {
  ChainSpec spec;
  CMatrix matrix;
};

// theta(k,j) (x) theta(k,j) + beta(k,j) (x) beta(k,j), a d^2 x d^2 matrix equal
// to 2 (|k-1, j-1><j-1, k-1| + h.c.) in the 0-based two-site basis.
CMatrix two_site_term(std::size_t k, std::size_t j, std::size_t d);

// I^(link-1) (x) term (x) I^(n-link-1): `term` acts on sites link-1, link.
CMatrix embed_pair(const CMatrix& term, std::size_t link, const ChainSpec& spec,
                   std::size_t cap = kDefaultDimensionCap);

// Single-site operator placed at 0-based `site`.
CMatrix embed_site(const CMatrix& op, std::size_t site, const ChainSpec& spec,
                   std::size_t cap = kDefaultDimensionCap);

// H = sum_i (J_i / 2) sum_{1<=k<j<=d} embed_pair(two_site_term(k,j,d), i).
ChainHamiltonian build_hamiltonian(const ChainSpec& spec,
                                   std::size_t cap = kDefaultDimensionCap);

// sum_i eta(r)_(i): the conserved charge for level index r.
CMatrix total_eta(std::size_t r, const ChainSpec& spec, std::size_t cap = kDefaultDimensionCap);

// || [H, sum_i eta(r)_(i)] ||_F, 1 <= r <= d-1.
double symmetry_commutator_norm(const ChainHamiltonian& h, std::size_t r);

// Permutation |q_0 ... q_{n-1}> -> |q_{n-1} ... q_0>.
CMatrix site_reversal(const ChainSpec& spec, std::size_t cap = kDefaultDimensionCap);

}  // namespace qpst
