#include <memory>
#include <random>

#include <benchmark/benchmark.h>

#include "kondo/model.hpp"
#include "kondo/observables.hpp"
#include "kondo/quench.hpp"
#include "kondo/solver.hpp"

using namespace kondo;

namespace {

SparseOperator composite(int n) {
  const auto chain = tabulated_chain(n / 2);
  return build_composite_hamiltonian({chain, chain, 0.9},
                                     std::make_shared<const SectorBasis>(SectorBasis::sector(n, n / 2)));
}

StateVector random_state(const SparseOperator& h) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  StateVector psi(h.basis_ptr());
  for (auto& a : psi.amplitudes()) a = {g(rng), g(rng)};
  psi.normalize();
  return psi;
}

void BM_Build(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(composite(n));
}
BENCHMARK(BM_Build)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MatVec(benchmark::State& state) {
  const auto h = composite(static_cast<int>(state.range(0)));
  const auto psi = random_state(h);
  std::vector<Complex> y(psi.size());
  for (auto _ : state) {
    h.apply(psi.amplitudes(), y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(h.nonzeros()));
}
BENCHMARK(BM_MatVec)->Arg(12)->Arg(16)->Arg(20);

void BM_GroundState(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = build_chain_hamiltonian(
      tabulated_chain(n), std::make_shared<const SectorBasis>(SectorBasis::sector(n, n / 2)));
  for (auto _ : state) benchmark::DoNotOptimize(ground_state(h, {}));
}
BENCHMARK(BM_GroundState)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_KrylovStep(benchmark::State& state) {
  const auto h = composite(static_cast<int>(state.range(0)));
  const auto psi = random_state(h);
  const SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(evolve_krylov(h, psi, cfg.dt, cfg));
}
BENCHMARK(BM_KrylovStep)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_ReducedDensityMatrix(benchmark::State& state) {
  const auto h = composite(static_cast<int>(state.range(0)));
  const auto psi = random_state(h);
  const int n = h.basis().n_sites();
  for (auto _ : state) benchmark::DoNotOptimize(reduced_density_matrix(psi, 1, n));
}
BENCHMARK(BM_ReducedDensityMatrix)->Arg(12)->Arg(16);

void BM_Concurrence(benchmark::State& state) {
  const auto rho = TwoQubitDensityMatrix(0.7 * TwoQubitDensityMatrix::singlet().matrix() +
                                         0.3 * TwoQubitDensityMatrix::maximally_mixed().matrix());
  for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_Concurrence);

}  // namespace
BENCHMARK_MAIN();
