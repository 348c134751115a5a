#include "qpst/qudit_states.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"

using namespace qpst;

namespace {

CMatrix power(const CMatrix& m, std::size_t k) {
  CMatrix out = CMatrix::identity(m.rows());
  for (std::size_t i = 0; i < k; ++i) out = out * m;
  return out;
}

}  // namespace

TEST(BasisState, big_endian_index) {
  const std::array<std::size_t, 2> d01{0, 1}, d21{2, 1};
  EXPECT_EQ(basis_state(d01, 2).amplitude(1), Complex(1.0));
  EXPECT_EQ(basis_state(d21, 3).amplitude(7), Complex(1.0));
  const std::array<std::size_t, 2> bad{0, 2};
  EXPECT_THROW(basis_state(bad, 2), ArgumentError);
}

TEST(BellLabelTest, validation) {
  EXPECT_THROW(BellLabel(2, 0, 2), ArgumentError);
  EXPECT_THROW(BellLabel(0, 3, 3), ArgumentError);
  EXPECT_THROW(BellLabel(0, 0, 1), ArgumentError);
  EXPECT_EQ(BellLabel(1, 2, 3), BellLabel(1, 2, 3));
}

TEST(GeneralizedBell, qubit_examples) {
  const double s = 1.0 / std::sqrt(2.0);
  const PureState phi = generalized_bell(BellLabel(0, 0, 2));
  EXPECT_NEAR(std::abs(phi.amplitude(0) - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(phi.amplitude(3) - s), 0.0, 1e-15);
  const PureState minus = generalized_bell(BellLabel(1, 0, 2));
  EXPECT_NEAR(std::abs(minus.amplitude(3) + s), 0.0, 1e-15);
  const PureState flip = generalized_bell(BellLabel(0, 1, 2));
  EXPECT_NEAR(std::abs(flip.amplitude(1) - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(flip.amplitude(2) - s), 0.0, 1e-15);
}

TEST(GeneralizedBell, qutrit_phase_example) {
  const PureState b = generalized_bell(BellLabel(1, 0, 3));
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const double s = 1.0 / std::sqrt(3.0);
  EXPECT_LT(std::abs(b.amplitude(0) - s), 1e-15);
  EXPECT_LT(std::abs(b.amplitude(4) - s * w), 1e-15);
  EXPECT_LT(std::abs(b.amplitude(8) - s * w * w), 1e-15);
}

TEST(GeneralizedBell, orthonormal_basis) {
  for (std::size_t d = 2; d <= 4; ++d) {
    std::vector<PureState> all;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q) all.push_back(generalized_bell(BellLabel(p, q, d)));
    for (std::size_t a = 0; a < all.size(); ++a)
      for (std::size_t b = 0; b < all.size(); ++b)
        EXPECT_NEAR(oracle::overlap_sq(all[a].amplitudes(), all[b].amplitudes()),
                    a == b ? 1.0 : 0.0, 1e-14);
  }
}

TEST(GeneralizedBell, reductions_are_maximally_mixed) {
  for (std::size_t d = 2; d <= 4; ++d) {
    const CMatrix mixed = Complex(1.0 / static_cast<double>(d)) * CMatrix::identity(d);
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = 0; q < d; ++q) {
        const PureState b = generalized_bell(BellLabel(p, q, d));
        for (std::size_t site : {0u, 1u}) {
          const std::array<std::size_t, 1> keep{site};
          EXPECT_LT(partial_trace(b, keep).matrix().max_abs_diff(mixed), 1e-14);
        }
      }
    }
  }
}

TEST(Gates, unitary_and_weyl_relations) {
  for (std::size_t d = 2; d <= 5; ++d) {
    const GateSet g = gate_set(d);
    EXPECT_TRUE(g.fourier.is_unitary());
    EXPECT_TRUE(g.shift.is_unitary());
    EXPECT_TRUE(g.clock.is_unitary());
    EXPECT_TRUE(g.cnot.is_unitary());
    EXPECT_LT(power(g.shift, d).max_abs_diff(CMatrix::identity(d)), 1e-14);
    EXPECT_LT(power(g.clock, d).max_abs_diff(CMatrix::identity(d)), 1e-13);
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(d));
    EXPECT_LT((g.clock * g.shift).max_abs_diff(w * (g.shift * g.clock)), 1e-14);
    EXPECT_LT(clock_power(d, d + 1).max_abs_diff(g.clock), 1e-13);
    EXPECT_LT(shift_power(d, 2).max_abs_diff(g.shift * g.shift), 1e-15);
  }
}

TEST(Gates, cnot_adds_modulo_d) {
  const GateSet g = gate_set(3);
  const std::array<std::size_t, 2> in{2, 2}, out{2, 1};
  EXPECT_LT((g.cnot * basis_state(in, 3).amplitudes() - basis_state(out, 3).amplitudes()).norm(),
            1e-15);
}

TEST(Circuit, time_ordered_reproduces_bell_states) {
  for (std::size_t d = 2; d <= 4; ++d) {
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = 0; q < d; ++q) {
        const BellLabel label(p, q, d);
        EXPECT_GE(oracle::overlap_sq(bell_via_circuit(label).amplitudes(),
                                     generalized_bell(label).amplitudes()),
                  1.0 - 1e-10)
            << "d=" << d << " p=" << p << " q=" << q;
      }
    }
  }
}

TEST(Circuit, printed_order_gives_product_state) {
  for (std::size_t d = 2; d <= 4; ++d) {
    const PureState s = bell_via_circuit(BellLabel(1, 1, d), CircuitOrder::kAsPrinted);
    const std::array<std::size_t, 1> keep{0};
    EXPECT_NEAR(partial_trace(s, keep).purity(), 1.0, 1e-12);
  }
}

TEST(Embed, placement_in_chain) {
  const PureState b = generalized_bell(BellLabel(0, 0, 2));
  const PureState chain = embed_in_chain(b, 2, 4);
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(chain.amplitude(0).real(), s, 1e-15);   // |0000>
  EXPECT_NEAR(chain.amplitude(3).real(), s, 1e-15);   // |0011>
  const PureState front = embed_in_chain(b, 0, 4);
  EXPECT_NEAR(front.amplitude(12).real(), s, 1e-15);  // |1100>
  EXPECT_THROW(embed_in_chain(b, 3, 4), ArgumentError);
}

TEST(RandomState, normalized_and_seeded) {
  std::mt19937_64 a(99), b(99);
  const PureState x = random_state(3, 2, a);
  const PureState y = random_state(3, 2, b);
  EXPECT_NEAR(x.amplitudes().norm(), 1.0, 1e-14);
  EXPECT_EQ((x.amplitudes() - y.amplitudes()).norm(), 0.0);
}
