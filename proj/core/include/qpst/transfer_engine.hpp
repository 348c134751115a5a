#pragma once

// Stepped transfer runs along a qudit chain and the diagnostics recorded at
// every step.

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "qpst/chain_hamiltonian.hpp"
#include "qpst/noise_channels.hpp"
#include "qpst/qudit_states.hpp"
#include "qpst/tensor_core.hpp"

namespace qpst {

inline constexpr std::size_t kNoiselessSteps = 8;
inline constexpr std::size_t kNoisySteps = 16;

// Hamiltonian of a chain together with its eigendecomposition, built once
// and shared by the PST search and every propagation of a run.
class ChainDynamics {
 public:
  explicit ChainDynamics(const ChainSpec& spec, std::size_t cap = kDefaultDimensionCap);

  const ChainSpec& spec() const noexcept { return hamiltonian_.spec; }
  const ChainHamiltonian& hamiltonian() const noexcept { return hamiltonian_; }
  const HermitianSpectrum& spectrum() const noexcept { return spectrum_; }

  CMatrix propagator(double t) const { return spectrum_.propagator(t); }
  CVector evolve(const CVector& v, double t) const { return spectrum_.evolve(v, t); }

  // <level@to | exp(-iHt) | level@from>, all other sites in |0>.
  Complex transfer_amplitude(std::size_t from_site, std::size_t to_site, double t,
                             std::size_t level = 1) const;

 private:
  ChainHamiltonian hamiltonian_;
  HermitianSpectrum spectrum_;
};

struct PstSearchOptions {
  double window = 0.0;               // <= 0 selects pi * n / min(J)
  double accept_deficit = 1e-8;      // earliest peak with F >= 1 - accept_deficit wins
  double not_found_deficit = 1e-6;   // below 1 - not_found_deficit everywhere: PstNotFoundError
  std::size_t level = 1;
};

struct PstResult {
  double time = 0.0;
  double fidelity = 0.0;
};

// Time of perfect transfer of |level> from site 0 to site n-1: grid scan of
// |amplitude|^2 followed by golden-section refinement of each local peak.
PstResult find_pst(const ChainDynamics& dynamics, const PstSearchOptions& options = {});
double find_pst_time(const ChainSpec& spec);

struct TransferConfig {
  ChainSpec spec;
  PureState input;                     // 1 or 2 qudits
  std::size_t input_site = 0;
  std::size_t steps = kNoiselessSteps;
  std::optional<double> total_time;    // empty: find_pst
  std::optional<KrausChannel> noise;   // applied to every site after every step
  double support_threshold = 1e-10;
};

struct SupportEntry {
  std::size_t index = 0;
  double weight = 0.0;
};

struct StepRecord {
  std::size_t step = 0;
  double time = 0.0;
  // Target-site state vs. the input state.
  double fidelity_raw = 0.0;
  // Pair inputs: best generalized Bell overlap of the target pair.
  // Single-qudit inputs: overlap with the input after undoing the chain's
  // transfer phase, diag(1, c, ..., c) with c the phase of the
  // single-excitation end-to-end amplitude at this time.
  double fidelity_bell = 0.0;
  // Target-site state vs. the noiseless final target state.
  double fidelity_reference = 0.0;
  // Von Neumann entropy (bits) of the farthest target site.
  double entropy = 0.0;
  std::vector<SupportEntry> support;
};

struct TransferTrace {
  std::vector<StepRecord> records;  // steps + 1 entries, record 0 is the input
  double total_time = 0.0;
  std::vector<std::size_t> target_sites;
  std::optional<BellLabel> final_bell_label;  // pair inputs only
  std::variant<PureState, DensityMatrix> final_state;
  DensityMatrix final_target;
  DensityMatrix reference_target;  // noiseless target state at total_time
};

TransferTrace run_noiseless(const TransferConfig& config);
TransferTrace run_noisy(const TransferConfig& config);
// Dispatches on config.noise.
TransferTrace run_transfer(const TransferConfig& config);

// |<a|b>|^2.
double fidelity_pure(const PureState& a, const PureState& b);
// <psi|rho|psi>.
double fidelity_to_pure(const PureState& psi, const DensityMatrix& rho);
// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

struct BellMatch {
  double fidelity = 0.0;
  BellLabel label;
};

// Max over all d^2 labels of <psi_pq|rho|psi_pq>; ties go to the
// lexicographically smallest (p, q).
BellMatch bell_corrected_fidelity(const DensityMatrix& pair_state, std::size_t d);

// Entropy (bits) of either qudit of a pure two-qudit state.
double entanglement_entropy(const PureState& pair_state);

// Basis indices with |amplitude|^2 > threshold, heaviest first.
std::vector<std::size_t> support_pattern(const PureState& state, double threshold = 1e-10);
std::vector<SupportEntry> support_weights(const PureState& state, double threshold = 1e-10);
std::vector<SupportEntry> support_weights(const DensityMatrix& state, double threshold = 1e-10);

// Eigenvector of the largest eigenvalue, with its eigenvalue. The global
// phase is fixed so the largest-magnitude amplitude is real and positive.
struct PrincipalState {
  double weight;
  PureState state;
};
PrincipalState principal_state(const DensityMatrix& rho);

}  // namespace qpst
