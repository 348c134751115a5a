#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

#include "qpst/tensor_core.hpp"

namespace qpst {

// Index of the generalized Bell state |psi_pq>: phase p, shift q.
struct BellLabel {
  std::size_t p = 0;
  std::size_t q = 0;
  std::size_t d = 2;

  BellLabel() = default;
  BellLabel(std::size_t p_, std::size_t q_, std::size_t d_);

  friend bool operator==(const BellLabel&, const BellLabel&) = default;
};

// Single-qudit Fourier, shift, clock and the two-qudit modular-addition gate.
struct GateSet {
  std::size_t d = 0;
  CMatrix fourier;  // omega^(rc) / sqrt(d)
  CMatrix shift;    // X|m> = |m+1 mod d>
  CMatrix clock;    // Z|m> = omega^m |m>
  CMatrix cnot;     // |a>|b> -> |a>|a+b mod d>
};

GateSet gate_set(std::size_t d);

// Z^power for the d-level clock matrix (power taken mod d).
CMatrix clock_power(std::size_t d, std::size_t power);
// X^power for the d-level shift matrix (power taken mod d).
CMatrix shift_power(std::size_t d, std::size_t power);

// Computational basis state; digits[0] is site 0 (most significant).
PureState basis_state(std::span<const std::size_t> digits, std::size_t d);

// (1/sqrt d) sum_j exp(2 pi i j p / d) |j>|j+q mod d>.
PureState generalized_bell(const BellLabel& label);

// How the product (I(x)X)^q (H(x)I) (Z(x)I)^p CNOT |00> is evaluated.
//   kTimeOrdered: gates applied left to right (X^q first, CNOT last), i.e.
//                 the matrix product CNOT (Z(x)I)^p (H(x)I) (I(x)X)^q |00>.
//                 Reproduces generalized_bell for every label.
//   kAsPrinted:   ordinary right-to-left matrix product; CNOT acts on |00>
//                 first and the result is a product state.
enum class CircuitOrder { kTimeOrdered, kAsPrinted };

PureState bell_via_circuit(const BellLabel& label,
                           CircuitOrder order = CircuitOrder::kTimeOrdered);

// |0..0> (x) state (x) |0..0> with `state` occupying sites [start, start+m).
PureState embed_in_chain(const PureState& state, std::size_t start, std::size_t n,
                         std::size_t cap = kDefaultDimensionCap);

// Haar-random pure state of m qudits from complex Gaussian amplitudes.
PureState random_state(std::size_t d, std::size_t m, std::mt19937_64& rng);

}  // namespace qpst
