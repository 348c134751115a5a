#include "qpst/noise_channels.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qpst/qudit_states.hpp"

using namespace qpst;

namespace {

DensityMatrix random_density(std::size_t d, std::size_t n, std::mt19937_64& rng) {
  const PureState a = random_state(d, n, rng);
  const PureState b = random_state(d, n, rng);
  Eigen::MatrixXcd m = 0.7 * a.density().matrix().eigen() + 0.3 * b.density().matrix().eigen();
  return DensityMatrix(d, n, CMatrix(std::move(m)));
}

// Reference for a channel on one site: the full operator sum with embedded
// Kraus operators.
DensityMatrix apply_embedded(const DensityMatrix& rho, const KrausChannel& ch, std::size_t site) {
  const std::size_t d = rho.d();
  const std::size_t n = rho.n();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.matrix().eigen().rows(),
                                                rho.matrix().eigen().cols());
  for (const CMatrix& e : ch.ops()) {
    oracle::Mat full = oracle::Mat::Identity(1, 1);
    for (std::size_t s = 0; s < n; ++s)
      full = oracle::kron(full, s == site ? e.eigen() : oracle::Mat::Identity(d, d));
    out += full * rho.matrix().eigen() * full.adjoint();
  }
  return DensityMatrix(d, n, CMatrix(std::move(out)));
}

}  // namespace

TEST(PhaseDamping, unit_strength_is_identity) {
  for (std::size_t d = 2; d <= 5; ++d) {
    EXPECT_LT(process_matrix(phase_damping(1.0, d)).max_abs_diff(
                  process_matrix(identity_channel(d))),
              1e-15);
  }
}

TEST(PhaseDamping, zero_strength_dephases_qubit) {
  const KrausChannel ch = phase_damping(0.0, 2);
  const DensityMatrix plus(2, 1, CMatrix{{0.5, 0.5}, {0.5, 0.5}});
  const DensityMatrix out = apply_channel(plus, ch);
  EXPECT_LT(out.matrix().max_abs_diff(CMatrix{{0.5, 0}, {0, 0.5}}), 1e-15);
}

TEST(PhaseDamping, qutrit_weights) {
  const auto w = phase_damping_weights(0.5, 3);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_NEAR(w[0], 9.0 / 16.0, 1e-15);
  EXPECT_NEAR(w[1], 6.0 / 16.0, 1e-15);
  EXPECT_NEAR(w[2], 1.0 / 16.0, 1e-15);
}

TEST(PhaseDamping, plus_state_coherence_scales_with_p) {
  for (double p : {0.0, 0.3, 0.8}) {
    const DensityMatrix plus(2, 1, CMatrix{{0.5, 0.5}, {0.5, 0.5}});
    const DensityMatrix out = apply_channel(plus, phase_damping(p, 2));
    EXPECT_NEAR(out.matrix().at(0, 1).real(), p / 2.0, 1e-15);
    EXPECT_NEAR(out.matrix().at(0, 0).real(), 0.5, 1e-15);
  }
}

TEST(PhaseDamping, argument_errors) {
  EXPECT_THROW(phase_damping(-0.1, 3), ArgumentError);
  EXPECT_THROW(phase_damping(1.1, 3), ArgumentError);
  EXPECT_THROW(phase_damping(std::nan(""), 3), ArgumentError);
  EXPECT_THROW(phase_damping(0.5, 1), ArgumentError);
}

TEST(Kraus, completeness_over_grid) {
  for (std::size_t d = 2; d <= 5; ++d) {
    for (double p : {0.0, 0.05, 0.25, 0.5, 0.75, 1.0}) {
      EXPECT_LE(phase_damping(p, d).completeness_error(), 1e-12) << "d=" << d << " p=" << p;
    }
  }
}

TEST(Kraus, incomplete_set_rejected) {
  EXPECT_THROW(KrausChannel(2, {Complex(0.9) * CMatrix::identity(2)}), ArgumentError);
  EXPECT_THROW(KrausChannel(2, {CMatrix::identity(3)}), ArgumentError);
  EXPECT_THROW(KrausChannel(2, {}), ArgumentError);
}

TEST(Weyl, binomial_specialization_equals_phase_damping) {
  for (std::size_t d = 2; d <= 4; ++d) {
    for (double p : {0.0, 0.05, 0.25, 0.5, 0.75, 1.0}) {
      const CMatrix a = process_matrix(phase_damping(p, d));
      const CMatrix b = process_matrix(weyl_channel(binomial_weyl_spec(p, d)));
      EXPECT_LE(a.max_abs_diff(b), 1e-12) << "d=" << d << " p=" << p;
    }
  }
}

TEST(Weyl, qubit_bit_flip) {
  Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(2, 2);
  pi(0, 0) = 0.5;
  pi(1, 0) = 0.5;
  const KrausChannel ch = weyl_channel(WeylSpec(2, pi));
  EXPECT_FALSE(ch.is_diagonal());
  const DensityMatrix zero(2, 1, CMatrix{{1, 0}, {0, 0}});
  EXPECT_LT(apply_channel(zero, ch).matrix().max_abs_diff(CMatrix{{0.5, 0}, {0, 0.5}}), 1e-15);
}

TEST(Weyl, spec_validation) {
  Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(2, 2);
  pi(0, 0) = 0.6;
  EXPECT_THROW(WeylSpec(2, pi), ArgumentError);
  pi(0, 0) = 1.2;
  pi(1, 1) = -0.2;
  EXPECT_THROW(WeylSpec(2, pi), ArgumentError);
  EXPECT_THROW(WeylSpec(3, Eigen::MatrixXd::Identity(2, 2) * 0.5), ArgumentError);
}

TEST(ApplyAt, matches_embedded_operator_sum) {
  std::mt19937_64 rng(2024);
  Eigen::MatrixXd pi = Eigen::MatrixXd::Constant(3, 3, 1.0 / 9.0);
  const KrausChannel weyl = weyl_channel(WeylSpec(3, pi));
  const KrausChannel damp = phase_damping(0.4, 3);
  const DensityMatrix rho = random_density(3, 3, rng);
  for (std::size_t site = 0; site < 3; ++site) {
    for (const KrausChannel* ch : {&weyl, &damp}) {
      const DensityMatrix fast = apply_channel_at(rho, *ch, site);
      EXPECT_LT(fast.matrix().max_abs_diff(apply_embedded(rho, *ch, site).matrix()), 1e-14);
    }
  }
}

TEST(ApplyAt, leaves_other_sites_untouched) {
  std::mt19937_64 rng(5);
  const DensityMatrix rho = random_density(3, 3, rng);
  const DensityMatrix out = apply_channel_at(rho, phase_damping(0.0, 3), 1);
  for (std::size_t s : {0u, 2u}) {
    const std::array<std::size_t, 1> keep{s};
    EXPECT_LT(partial_trace(out, keep).matrix().max_abs_diff(partial_trace(rho, keep).matrix()),
              1e-14);
  }
}

TEST(ApplyAt, sites_commute) {
  std::mt19937_64 rng(6);
  const DensityMatrix rho = random_density(2, 3, rng);
  Eigen::MatrixXd pi(2, 2);
  pi << 0.4, 0.3, 0.2, 0.1;
  const KrausChannel ch = weyl_channel(WeylSpec(2, pi));
  const DensityMatrix ab = apply_channel_at(apply_channel_at(rho, ch, 0), ch, 2);
  const DensityMatrix ba = apply_channel_at(apply_channel_at(rho, ch, 2), ch, 0);
  EXPECT_LT(ab.matrix().max_abs_diff(ba.matrix()), 1e-14);
}

TEST(ApplyAt, preserves_density_properties) {
  std::mt19937_64 rng(8);
  for (double p : {0.0, 0.5, 1.0}) {
    const DensityMatrix rho = random_density(3, 2, rng);
    DensityMatrix out = rho;
    for (std::size_t s = 0; s < 2; ++s) out = apply_channel_at(out, phase_damping(p, 3), s);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(out.matrix().is_hermitian(1e-14));
    EXPECT_TRUE(out.is_positive_semidefinite());
    EXPECT_LE(out.purity(), rho.purity() + 1e-12);
  }
}

TEST(ApplyAt, argument_errors) {
  const DensityMatrix rho(2, 2, Complex(0.25) * CMatrix::identity(4));
  EXPECT_THROW(apply_channel_at(rho, phase_damping(0.5, 2), 2), ArgumentError);
  EXPECT_THROW(apply_channel_at(rho, phase_damping(0.5, 3), 0), ArgumentError);
  EXPECT_THROW(apply_channel(rho, phase_damping(0.5, 2)), ArgumentError);
}
