#include "qpst/qudit_states.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace qpst {

namespace {

Complex root_of_unity(std::size_t d, std::size_t power) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(power % d) /
                       static_cast<double>(d);
  return std::polar(1.0, angle);
}

void require_levels(std::size_t d, const char* who) {
  if (d < 2) throw ArgumentError(std::string(who) + ": d must be >= 2");
}

CMatrix matrix_power(const CMatrix& m, std::size_t power) {
  CMatrix out = CMatrix::identity(m.rows());
  for (std::size_t i = 0; i < power; ++i) out = out * m;
  return out;
}

}  // namespace

BellLabel::BellLabel(std::size_t p_, std::size_t q_, std::size_t d_) : p(p_), q(q_), d(d_) {
  require_levels(d, "BellLabel");
  if (p >= d || q >= d) {
    throw ArgumentError("BellLabel: need 0 <= p, q <= d-1, got p=" + std::to_string(p) +
                        " q=" + std::to_string(q) + " d=" + std::to_string(d));
  }
}

CMatrix clock_power(std::size_t d, std::size_t power) {
  require_levels(d, "clock_power");
  CMatrix z(d, d);
  for (std::size_t m = 0; m < d; ++m) z.at(m, m) = root_of_unity(d, m * (power % d));
  return z;
}

CMatrix shift_power(std::size_t d, std::size_t power) {
  require_levels(d, "shift_power");
  CMatrix x(d, d);
  for (std::size_t m = 0; m < d; ++m) x.at((m + power) % d, m) = 1.0;
  return x;
}

GateSet gate_set(std::size_t d) {
  require_levels(d, "gate_set");
  GateSet g;
  g.d = d;
  g.fourier = CMatrix(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) g.fourier.at(r, c) = scale * root_of_unity(d, r * c);
  }
  g.shift = shift_power(d, 1);
  g.clock = clock_power(d, 1);
  g.cnot = CMatrix(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) g.cnot.at(a * d + (a + b) % d, a * d + b) = 1.0;
  }
  return g;
}

PureState basis_state(std::span<const std::size_t> digits, std::size_t d) {
  require_levels(d, "basis_state");
  if (digits.empty()) throw ArgumentError("basis_state: need at least one site");
  const std::size_t dim =
      register_dimension(d, digits.size(), std::numeric_limits<std::size_t>::max());
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(digits_to_index(digits, d))) = 1.0;
  return PureState(d, digits.size(), std::move(v));
}

PureState generalized_bell(const BellLabel& label) {
  const std::size_t d = label.d;
  const BellLabel checked(label.p, label.q, d);
  CVector v = CVector::Zero(static_cast<Eigen::Index>(d * d));
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) {
    v(static_cast<Eigen::Index>(j * d + (j + checked.q) % d)) =
        scale * root_of_unity(d, j * checked.p);
  }
  return PureState(d, 2, std::move(v));
}

PureState bell_via_circuit(const BellLabel& label, CircuitOrder order) {
  const BellLabel checked(label.p, label.q, label.d);
  const std::size_t d = checked.d;
  const GateSet g = gate_set(d);
  const CMatrix id = CMatrix::identity(d);

  const CMatrix shift_q = kron(id, matrix_power(g.shift, checked.q));
  const CMatrix fourier = kron(g.fourier, id);
  const CMatrix clock_p = kron(matrix_power(g.clock, checked.p), id);

  CVector ket = CVector::Zero(static_cast<Eigen::Index>(d * d));
  ket(0) = 1.0;

  // Printed: shift_q * fourier * clock_p * cnot * |00>.
  const CMatrix op = order == CircuitOrder::kAsPrinted ? shift_q * fourier * clock_p * g.cnot
                                                       : g.cnot * clock_p * fourier * shift_q;
  return PureState::normalized(d, 2, op * ket);
}

PureState embed_in_chain(const PureState& state, std::size_t start, std::size_t n,
                         std::size_t cap) {
  const std::size_t d = state.d();
  const std::size_t m = state.n();
  if (start + m > n) {
    throw ArgumentError("embed_in_chain: sites [" + std::to_string(start) + ", " +
                        std::to_string(start + m) + ") exceed chain length " + std::to_string(n));
  }
  const std::size_t dim = register_dimension(d, n, cap);
  std::size_t right = 1;
  for (std::size_t s = start + m; s < n; ++s) right *= d;

  // Left padding is |0...0>, so the leading digits contribute nothing to the index.
  CVector out = CVector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t a = 0; a < state.dim(); ++a) {
    out(static_cast<Eigen::Index>(a * right)) = state.amplitudes()(static_cast<Eigen::Index>(a));
  }
  return PureState(d, n, std::move(out));
}

PureState random_state(std::size_t d, std::size_t m, std::mt19937_64& rng) {
  require_levels(d, "random_state");
  const std::size_t dim = register_dimension(d, m, std::numeric_limits<std::size_t>::max());
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  return PureState::normalized(d, m, std::move(v));
}

}  // namespace qpst
