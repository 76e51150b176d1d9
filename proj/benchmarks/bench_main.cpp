#include <cmath>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "mgt/blocks.hpp"
#include "mgt/semigroup.hpp"
#include "mgt/solver.hpp"
#include "mgt/spectral.hpp"

using namespace mgt;

namespace {

void BM_WeightedPropagator(benchmark::State& state) {
  const double eta = state.range(0) / 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(weighted_propagator(BlockKind::ReducedB, eta, 27.0, 1.0));
}
BENCHMARK(BM_WeightedPropagator)->Arg(1)->Arg(4)->Arg(6);  // eta 0.5, 2, 3 (defective)

void BM_SineRoundTrip(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const EigenSequence e = dirichlet_eigs(n, std::numbers::pi);
  CVector c(n);
  for (int k = 0; k < n; ++k) c[k] = 1.0 / (k + 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(synthesize(c, e), e));
  state.SetComplexityN(n);
}
BENCHMARK(BM_SineRoundTrip)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_EtdCubic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const EigenSequence e = dirichlet_eigs(static_cast<int>(n), std::numbers::pi);
  SpectralState y0 = SpectralState::zeros(n, Coords::Reduced);
  y0.u[0] = 0.1;
  SolverConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_final = 1.0;
  cfg.record_every = 100;
  for (auto _ : state) benchmark::DoNotOptimize(etd_solve(y0, 2.0, Nonlinearity::cubic(-1.0), cfg, e));
  state.counters["steps"] = 100;
}
BENCHMARK(BM_EtdCubic)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SectorScan(benchmark::State& state) {
  const EigenSequence e = dirichlet_eigs(static_cast<int>(state.range(0)), std::numbers::pi);
  const std::vector<double> angles{3.0 * std::numbers::pi / 4.0, -3.0 * std::numbers::pi / 4.0};
  std::vector<double> radii;
  for (int k = 0; k <= 16; ++k) radii.push_back(std::pow(10.0, 0.25 * k));
  for (auto _ : state) benchmark::DoNotOptimize(sector_scan(2.0, e, angles, radii).m_estimate);
}
BENCHMARK(BM_SectorScan)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
