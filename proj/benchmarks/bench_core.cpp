#include <benchmark/benchmark.h>

#include <numbers>

#include "qpst/transfer_engine.hpp"

using namespace qpst;

static void BM_BuildHamiltonian(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const ChainSpec spec = ChainSpec::with_default_couplings(d, n);
  for (auto _ : state) benchmark::DoNotOptimize(build_hamiltonian(spec));
}
BENCHMARK(BM_BuildHamiltonian)->Args({2, 6})->Args({3, 4})->Args({3, 5});

static void BM_Propagator(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CMatrix h = build_hamiltonian(ChainSpec::with_default_couplings(3, n)).matrix;
  for (auto _ : state) benchmark::DoNotOptimize(mat_exp_hermitian(h, std::numbers::pi / 8));
}
BENCHMARK(BM_Propagator)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_FindPst(benchmark::State& state) {
  const ChainDynamics dyn(ChainSpec::with_default_couplings(3, 5));
  for (auto _ : state) benchmark::DoNotOptimize(find_pst(dyn));
}
BENCHMARK(BM_FindPst)->Unit(benchmark::kMillisecond);

static void BM_DampingAllSites(benchmark::State& state) {
  const ChainSpec spec = ChainSpec::with_default_couplings(3, 5);
  CVector v = CVector::Zero(243);
  v(0) = v(4) = v(8) = 1.0;
  const DensityMatrix rho = PureState::normalized(3, 5, v).density();
  const KrausChannel ch = phase_damping(0.5, 3);
  for (auto _ : state) {
    DensityMatrix out = rho;
    for (std::size_t s = 0; s < spec.n(); ++s) out = apply_channel_at(out, ch, s);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_DampingAllSites)->Unit(benchmark::kMillisecond);

static void BM_NoisySweepPoint(benchmark::State& state) {
  CVector v = CVector::Zero(9);
  v(0) = v(4) = v(8) = 1.0;
  TransferConfig cfg{ChainSpec::with_default_couplings(3, 5), PureState::normalized(3, 2, v)};
  cfg.steps = kNoisySteps;
  cfg.noise = phase_damping(0.5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(run_noisy(cfg));
}
BENCHMARK(BM_NoisySweepPoint)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
