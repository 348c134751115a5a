#include "qpst/chain_hamiltonian.hpp"

#include <cmath>
#include <string>

#include "qpst/su_generators.hpp"

namespace qpst {

double default_coupling(std::size_t i, std::size_t n) {
  if (n < 2 || i < 1 || i > n - 1) {
    throw ArgumentError("default_coupling: need 1 <= i <= n-1, got i=" + std::to_string(i) +
                        " n=" + std::to_string(n));
  }
  const double di = static_cast<double>(i);
  const double dn = static_cast<double>(n);
  return std::sqrt(di * (dn - di)) / 2.0;
}

ChainSpec::ChainSpec(std::size_t d, std::size_t n, std::vector<double> couplings)
    : d_(d), n_(n), couplings_(std::move(couplings)) {
  if (d_ < 2) throw ArgumentError("ChainSpec: d must be >= 2");
  if (n_ < 2) throw ArgumentError("ChainSpec: chain length must be >= 2");
  if (couplings_.size() != n_ - 1) {
    throw ArgumentError("ChainSpec: expected " + std::to_string(n_ - 1) + " couplings, got " +
                        std::to_string(couplings_.size()));
  }
  for (double j : couplings_) {
    if (!(j > 0.0) || !std::isfinite(j)) {
      throw ArgumentError("ChainSpec: couplings must be finite and > 0");
    }
  }
}

ChainSpec ChainSpec::with_default_couplings(std::size_t d, std::size_t n) {
  if (n < 2) throw ArgumentError("ChainSpec: chain length must be >= 2");
  std::vector<double> j(n - 1);
  for (std::size_t i = 1; i < n; ++i) j[i - 1] = default_coupling(i, n);
  return ChainSpec(d, n, std::move(j));
}

ChainSpec ChainSpec::homogeneous(std::size_t d, std::size_t n, double coupling) {
  if (n < 2) throw ArgumentError("ChainSpec: chain length must be >= 2");
  return ChainSpec(d, n, std::vector<double>(n - 1, coupling));
}

double ChainSpec::coupling(std::size_t link) const {
  if (link < 1 || link > couplings_.size()) {
    throw ArgumentError("ChainSpec::coupling: link " + std::to_string(link) + " out of range");
  }
  return couplings_[link - 1];
}

bool ChainSpec::is_mirror_symmetric(double tol) const {
  for (std::size_t i = 0; i < couplings_.size(); ++i) {
    if (std::abs(couplings_[i] - couplings_[couplings_.size() - 1 - i]) > tol) return false;
  }
  return true;
}

CMatrix two_site_term(std::size_t k, std::size_t j, std::size_t d) {
  const CMatrix th = theta(k, j, d);
  const CMatrix be = beta(k, j, d);
  return kron(th, th) + kron(be, be);
}

CMatrix embed_pair(const CMatrix& term, std::size_t link, const ChainSpec& spec,
                   std::size_t cap) {
  const std::size_t d = spec.d();
  if (term.rows() != d * d || term.cols() != d * d) {
    throw ArgumentError("embed_pair: term must be " + std::to_string(d * d) + "x" +
                        std::to_string(d * d));
  }
  if (link < 1 || link > spec.n() - 1) {
    throw ArgumentError("embed_pair: link " + std::to_string(link) + " out of range");
  }
  spec.dim(cap);
  const std::size_t left = register_dimension(d, link - 1, cap);
  const std::size_t right = register_dimension(d, spec.n() - link - 1, cap);
  return kron(kron(CMatrix::identity(left), term, cap), CMatrix::identity(right), cap);
}

CMatrix embed_site(const CMatrix& op, std::size_t site, const ChainSpec& spec, std::size_t cap) {
  const std::size_t d = spec.d();
  if (op.rows() != d || op.cols() != d) {
    throw ArgumentError("embed_site: operator must be " + std::to_string(d) + "x" +
                        std::to_string(d));
  }
  if (site >= spec.n()) throw ArgumentError("embed_site: site out of range");
  spec.dim(cap);
  const std::size_t left = register_dimension(d, site, cap);
  const std::size_t right = register_dimension(d, spec.n() - site - 1, cap);
  return kron(kron(CMatrix::identity(left), op, cap), CMatrix::identity(right), cap);
}

ChainHamiltonian build_hamiltonian(const ChainSpec& spec, std::size_t cap) {
  const std::size_t d = spec.d();
  const std::size_t dim = spec.dim(cap);

  CMatrix link_term(d * d, d * d);
  for (std::size_t k = 1; k <= d; ++k) {
    for (std::size_t j = k + 1; j <= d; ++j) link_term += two_site_term(k, j, d);
  }

  CMatrix h(dim, dim);
  for (std::size_t link = 1; link < spec.n(); ++link) {
    h += (spec.coupling(link) / 2.0) * embed_pair(link_term, link, spec, cap);
  }
  return ChainHamiltonian{spec, std::move(h)};
}

CMatrix total_eta(std::size_t r, const ChainSpec& spec, std::size_t cap) {
  const CMatrix e = eta(r, spec.d());
  const std::size_t dim = spec.dim(cap);
  CMatrix sum(dim, dim);
  for (std::size_t site = 0; site < spec.n(); ++site) sum += embed_site(e, site, spec, cap);
  return sum;
}

double symmetry_commutator_norm(const ChainHamiltonian& h, std::size_t r) {
  if (r < 1 || r + 1 > h.spec.d()) {
    throw ArgumentError("symmetry_commutator_norm: need 1 <= r <= d-1");
  }
  const CMatrix charge = total_eta(r, h.spec, h.matrix.rows());
  return (h.matrix * charge - charge * h.matrix).frobenius_norm();
}

CMatrix site_reversal(const ChainSpec& spec, std::size_t cap) {
  const std::size_t dim = spec.dim(cap);
  CMatrix p(dim, dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    auto digits = index_to_digits(idx, spec.d(), spec.n());
    std::vector<std::size_t> reversed(digits.rbegin(), digits.rend());
    p.at(digits_to_index(reversed, spec.d()), idx) = 1.0;
  }
  return p;
}

}  // namespace qpst
