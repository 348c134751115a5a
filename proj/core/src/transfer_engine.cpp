#include "qpst/transfer_engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace qpst {

namespace {

Eigen::Index as_index(std::size_t v) { return static_cast<Eigen::Index>(v); }

std::size_t single_excitation_index(std::size_t site, std::size_t level, const ChainSpec& spec) {
  std::vector<std::size_t> digits(spec.n(), 0);
  digits[site] = level;
  return digits_to_index(digits, spec.d());
}

// Sparse spectral form of t -> <b| exp(-iHt) |a>.
struct AmplitudeSeries {
  std::vector<double> energies;
  std::vector<Complex> weights;

  Complex operator()(double t) const {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < energies.size(); ++k) {
      acc += weights[k] * std::exp(Complex(0.0, -energies[k] * t));
    }
    return acc;
  }
  double fidelity(double t) const { return std::norm((*this)(t)); }
  // d/dt |a(t)|^2 = 2 Re(conj(a) a').
  double slope(double t) const {
    Complex a = 0.0, da = 0.0;
    for (std::size_t k = 0; k < energies.size(); ++k) {
      const Complex term = weights[k] * std::exp(Complex(0.0, -energies[k] * t));
      a += term;
      da += Complex(0.0, -energies[k]) * term;
    }
    return 2.0 * (std::conj(a) * da).real();
  }
};

AmplitudeSeries amplitude_series(const HermitianSpectrum& spectrum, std::size_t from,
                                 std::size_t to) {
  AmplitudeSeries series;
  const Eigen::MatrixXcd& v = spectrum.eigenvectors();
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    const Complex w = std::conj(v(as_index(to), k)) * v(as_index(from), k);
    if (std::abs(w) > 1e-15) {
      series.energies.push_back(spectrum.eigenvalues()(k));
      series.weights.push_back(w);
    }
  }
  return series;
}

// Maximizes a unimodal f on [lo, hi].
template <typename F>
std::pair<double, double> golden_section_max(F&& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(b)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double t = 0.5 * (a + b);
  return {t, f(t)};
}

// Peak inside [lo, hi] by bisection on the sign of the slope. A search on
// the fidelity values alone stalls near sqrt(eps) on the flat top.
std::pair<double, double> refine_peak(const AmplitudeSeries& series, double lo, double hi) {
  if (!(series.slope(lo) > 0.0 && series.slope(hi) < 0.0)) {
    return golden_section_max([&](double t) { return series.fidelity(t); }, lo, hi);
  }
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (series.slope(mid) > 0.0 ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  return {t, series.fidelity(t)};
}

std::vector<std::size_t> target_sites_for(const TransferConfig& config) {
  const std::size_t n = config.spec.n();
  const std::size_t m = config.input.n();
  if (m < 1 || m > 2) throw ArgumentError("transfer: input must span 1 or 2 qudits");
  if (config.input.d() != config.spec.d()) {
    throw ArgumentError("transfer: input qudit dimension differs from the chain's");
  }
  if (config.input_site + m > n) throw ArgumentError("transfer: input does not fit the chain");
  if (config.steps < 1) throw ArgumentError("transfer: steps must be >= 1");
  if (config.total_time && !(*config.total_time > 0.0)) {
    throw ArgumentError("transfer: total_time must be > 0");
  }
  // Mirror image of the input sites.
  std::vector<std::size_t> sites(m);
  const std::size_t first = n - config.input_site - m;
  std::iota(sites.begin(), sites.end(), first);
  return sites;
}

// Everything a run needs before stepping.
struct RunSetup {
  ChainDynamics dynamics;
  double total_time;
  std::vector<std::size_t> targets;
  PureState initial;
  DensityMatrix reference_target;
};

RunSetup prepare(const TransferConfig& config) {
  auto targets = target_sites_for(config);
  ChainDynamics dynamics(config.spec);
  const double total = config.total_time ? *config.total_time : find_pst(dynamics).time;
  PureState initial = embed_in_chain(config.input, config.input_site, config.spec.n());
  const PureState exact(config.spec.d(), config.spec.n(),
                        dynamics.evolve(initial.amplitudes(), total));
  DensityMatrix reference = partial_trace(exact, targets);
  return RunSetup{std::move(dynamics), total, std::move(targets), std::move(initial),
                  std::move(reference)};
}

double reference_fidelity(const DensityMatrix& target, const DensityMatrix& reference) {
  if (reference.purity() > 1.0 - 1e-12) {
    return fidelity_to_pure(principal_state(reference).state, target);
  }
  return state_fidelity(target, reference);
}

// Fills every field of `rec` that depends only on the target reduced state.
void record_target_diagnostics(StepRecord& rec, const DensityMatrix& target,
                               const DensityMatrix& reference, const TransferConfig& config,
                               const RunSetup& setup, double t) {
  rec.fidelity_raw = fidelity_to_pure(config.input, target);
  rec.fidelity_reference = reference_fidelity(target, reference);
  if (config.input.n() == 2) {
    rec.fidelity_bell = bell_corrected_fidelity(target, config.spec.d()).fidelity;
  } else {
    const Complex amp = setup.dynamics.transfer_amplitude(config.input_site,
                                                          setup.targets.front(), t);
    const Complex phase = std::abs(amp) > 1e-12 ? amp / std::abs(amp) : Complex(1.0, 0.0);
    CVector corrected = config.input.amplitudes();
    for (Eigen::Index m = 1; m < corrected.size(); ++m) corrected(m) *= phase;
    rec.fidelity_bell =
        fidelity_to_pure(PureState(config.input.d(), 1, std::move(corrected)), target);
  }
  const std::size_t far_site = target.n() - 1;
  const std::array<std::size_t, 1> keep{far_site};
  rec.entropy = von_neumann_entropy(partial_trace(target, keep));
}

double clamp_unit(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

// ---------------------------------------------------------------------------

ChainDynamics::ChainDynamics(const ChainSpec& spec, std::size_t cap)
    : hamiltonian_(build_hamiltonian(spec, cap)), spectrum_(hamiltonian_.matrix) {}

Complex ChainDynamics::transfer_amplitude(std::size_t from_site, std::size_t to_site, double t,
                                          std::size_t level) const {
  const ChainSpec& s = spec();
  if (from_site >= s.n() || to_site >= s.n()) {
    throw ArgumentError("transfer_amplitude: site out of range");
  }
  if (level < 1 || level >= s.d()) throw ArgumentError("transfer_amplitude: level out of range");
  const auto series = amplitude_series(spectrum_, single_excitation_index(from_site, level, s),
                                       single_excitation_index(to_site, level, s));
  return series(t);
}

PstResult find_pst(const ChainDynamics& dynamics, const PstSearchOptions& options) {
  const ChainSpec& spec = dynamics.spec();
  if (options.level < 1 || options.level >= spec.d()) {
    throw ArgumentError("find_pst: level out of range");
  }
  const auto series =
      amplitude_series(dynamics.spectrum(), single_excitation_index(0, options.level, spec),
                       single_excitation_index(spec.n() - 1, options.level, spec));

  double window = options.window;
  if (window <= 0.0) {
    const double j_min = *std::min_element(spec.couplings().begin(), spec.couplings().end());
    window = std::numbers::pi * static_cast<double>(spec.n()) / j_min;
  }

  const auto [e_min, e_max] = std::minmax_element(series.energies.begin(), series.energies.end());
  const double width = series.energies.empty() ? 1.0 : std::max(*e_max - *e_min, 1e-3);
  const double dt = 1.0 / (8.0 * width);
  const auto points = static_cast<std::size_t>(std::ceil(window / dt));

  std::vector<double> grid(points + 1);
  for (std::size_t i = 0; i <= points; ++i) grid[i] = series.fidelity(dt * static_cast<double>(i));

  PstResult best{0.0, -1.0};
  std::optional<PstResult> earliest;
  for (std::size_t i = 1; i < points; ++i) {
    if (grid[i] < 0.5 || grid[i] < grid[i - 1] || grid[i] < grid[i + 1]) continue;
    const auto [t, f] = refine_peak(series, dt * static_cast<double>(i - 1),
                                    dt * static_cast<double>(i + 1));
    if (f > best.fidelity) best = {t, f};
    if (f >= 1.0 - options.accept_deficit) {
      earliest = PstResult{t, f};
      break;
    }
  }
  if (earliest) return *earliest;
  if (best.fidelity >= 1.0 - options.not_found_deficit) return best;
  throw PstNotFoundError("no perfect transfer within t <= " + std::to_string(window) +
                             " (best fidelity " + std::to_string(std::max(0.0, best.fidelity)) +
                             ")",
                         best.time, std::max(0.0, best.fidelity));
}

double find_pst_time(const ChainSpec& spec) { return find_pst(ChainDynamics(spec)).time; }

// ---------------------------------------------------------------------------

TransferTrace run_noiseless(const TransferConfig& config) {
  if (config.noise) throw ArgumentError("run_noiseless: config carries a noise channel");
  RunSetup setup = prepare(config);
  const double dt = setup.total_time / static_cast<double>(config.steps);
  const Eigen::MatrixXcd step_u = setup.dynamics.propagator(dt).eigen();

  const std::size_t d = config.spec.d();
  const std::size_t n = config.spec.n();
  CVector psi = setup.initial.amplitudes();
  std::vector<StepRecord> records;
  records.reserve(config.steps + 1);
  std::optional<PureState> current;
  for (std::size_t k = 0; k <= config.steps; ++k) {
    if (k > 0) psi = step_u * psi;
    current.emplace(d, n, psi);
    const double t = dt * static_cast<double>(k);
    StepRecord rec;
    rec.step = k;
    rec.time = t;
    const DensityMatrix target = partial_trace(*current, setup.targets);
    record_target_diagnostics(rec, target, setup.reference_target, config, setup, t);
    rec.support = support_weights(*current, config.support_threshold);
    records.push_back(std::move(rec));
  }

  DensityMatrix final_target = partial_trace(*current, setup.targets);
  std::optional<BellLabel> label;
  if (config.input.n() == 2) label = bell_corrected_fidelity(final_target, d).label;
  return TransferTrace{std::move(records),
                       setup.total_time,
                       setup.targets,
                       label,
                       std::move(*current),
                       std::move(final_target),
                       std::move(setup.reference_target)};
}

TransferTrace run_noisy(const TransferConfig& config) {
  if (!config.noise) throw ArgumentError("run_noisy: config has no noise channel");
  if (config.noise->d() != config.spec.d()) {
    throw ArgumentError("run_noisy: channel dimension differs from the chain's");
  }
  RunSetup setup = prepare(config);
  const double dt = setup.total_time / static_cast<double>(config.steps);
  const Eigen::MatrixXcd step_u = setup.dynamics.propagator(dt).eigen();

  const std::size_t d = config.spec.d();
  const std::size_t n = config.spec.n();
  DensityMatrix rho = setup.initial.density();
  std::vector<StepRecord> records;
  records.reserve(config.steps + 1);
  for (std::size_t k = 0; k <= config.steps; ++k) {
    if (k > 0) {
      Eigen::MatrixXcd evolved = step_u * rho.matrix().eigen() * step_u.adjoint();
      evolved = 0.5 * (evolved + evolved.adjoint()).eval();
      rho = DensityMatrix(d, n, CMatrix(std::move(evolved)));
      for (std::size_t site = 0; site < n; ++site) rho = apply_channel_at(rho, *config.noise, site);
    }
    const double t = dt * static_cast<double>(k);
    StepRecord rec;
    rec.step = k;
    rec.time = t;
    const DensityMatrix target = partial_trace(rho, setup.targets);
    record_target_diagnostics(rec, target, setup.reference_target, config, setup, t);
    rec.support = support_weights(rho, config.support_threshold);
    records.push_back(std::move(rec));
  }

  DensityMatrix final_target = partial_trace(rho, setup.targets);
  std::optional<BellLabel> label;
  if (config.input.n() == 2) label = bell_corrected_fidelity(final_target, d).label;
  return TransferTrace{std::move(records),
                       setup.total_time,
                       setup.targets,
                       label,
                       std::move(rho),
                       std::move(final_target),
                       std::move(setup.reference_target)};
}

TransferTrace run_transfer(const TransferConfig& config) {
  return config.noise ? run_noisy(config) : run_noiseless(config);
}

// ---------------------------------------------------------------------------

double fidelity_pure(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) throw ArgumentError("fidelity_pure: dimension mismatch");
  return clamp_unit(std::norm(a.amplitudes().dot(b.amplitudes())));
}

double fidelity_to_pure(const PureState& psi, const DensityMatrix& rho) {
  if (psi.dim() != rho.dim()) throw ArgumentError("fidelity_to_pure: dimension mismatch");
  const CVector& v = psi.amplitudes();
  return clamp_unit(v.dot(rho.matrix().eigen() * v).real());
}

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw ArgumentError("state_fidelity: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix().eigen());
  // Round-off eigenvalues of rank-deficient states would otherwise enter
  // through the square roots at the 1e-8 level.
  auto root = [](double v) { return v > 1e-14 ? std::sqrt(v) : 0.0; };
  const Eigen::VectorXd sqrt_vals = es.eigenvalues().unaryExpr(root);
  const Eigen::MatrixXcd sqrt_rho =
      es.eigenvectors() * sqrt_vals.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  Eigen::MatrixXcd inner = sqrt_rho * sigma.matrix().eigen() * sqrt_rho;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner_es(inner, Eigen::EigenvaluesOnly);
  const double root_trace = inner_es.eigenvalues().unaryExpr(root).sum();
  return clamp_unit(root_trace * root_trace);
}

BellMatch bell_corrected_fidelity(const DensityMatrix& pair_state, std::size_t d) {
  if (pair_state.n() != 2 || pair_state.d() != d) {
    throw ArgumentError("bell_corrected_fidelity: expected a two-qudit state with d=" +
                        std::to_string(d));
  }
  BellMatch best{-1.0, BellLabel(0, 0, d)};
  for (std::size_t p = 0; p < d; ++p) {
    for (std::size_t q = 0; q < d; ++q) {
      const BellLabel label(p, q, d);
      const double f = fidelity_to_pure(generalized_bell(label), pair_state);
      if (f > best.fidelity + 1e-12) best = {f, label};
    }
  }
  return best;
}

double entanglement_entropy(const PureState& pair_state) {
  if (pair_state.n() != 2) throw ArgumentError("entanglement_entropy: expected two qudits");
  const std::array<std::size_t, 1> keep{0};
  return von_neumann_entropy(partial_trace(pair_state, keep));
}

std::vector<SupportEntry> support_weights(const PureState& state, double threshold) {
  if (!(threshold > 0.0)) throw ArgumentError("support: threshold must be > 0");
  std::vector<SupportEntry> out;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const double w = std::norm(state.amplitudes()(as_index(i)));
    if (w > threshold) out.push_back({i, w});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SupportEntry& a, const SupportEntry& b) { return a.weight > b.weight; });
  return out;
}

std::vector<SupportEntry> support_weights(const DensityMatrix& state, double threshold) {
  if (!(threshold > 0.0)) throw ArgumentError("support: threshold must be > 0");
  std::vector<SupportEntry> out;
  const Eigen::MatrixXcd& m = state.matrix().eigen();
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const double w = m(as_index(i), as_index(i)).real();
    if (w > threshold) out.push_back({i, w});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SupportEntry& a, const SupportEntry& b) { return a.weight > b.weight; });
  return out;
}

std::vector<std::size_t> support_pattern(const PureState& state, double threshold) {
  std::vector<std::size_t> out;
  for (const auto& e : support_weights(state, threshold)) out.push_back(e.index);
  return out;
}

PrincipalState principal_state(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix().eigen());
  const Eigen::Index top = es.eigenvalues().size() - 1;
  CVector v = es.eigenvectors().col(top);
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  v *= std::conj(v(arg)) / std::abs(v(arg));
  return PrincipalState{es.eigenvalues()(top), PureState::normalized(rho.d(), rho.n(), v)};
}

}  // namespace qpst
