#include <benchmark/benchmark.h>

#include "holo/fock.hpp"
#include "holo/oracle.hpp"
#include "holo/propagate.hpp"
#include "holo/rps.hpp"
#include "holo/transfer.hpp"

#include <random>

using namespace holo;

static CMat random_antisymmetric(int n) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> d;
  CMat a = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      a(i, j) = cplx(d(rng), d(rng));
      a(j, i) = -a(i, j);
    }
  return a;
}

static void BM_Pfaffian(benchmark::State& state) {
  const CMat a = random_antisymmetric(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pfaffian(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Pfaffian)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oNCubed);

static void BM_PropagatorSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto P = build_propagator(Model::ising, Regime::subcritical, build_dual_interval(0, n, IntervalKind::dual), 0.3,
                            Reading::consistent);
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(P.matrix));
}
BENCHMARK(BM_PropagatorSpectrum)->DenseRange(2, 32, 10);

static void BM_RpsOperator(benchmark::State& state) {
  auto P = build_propagator(Model::ising, Regime::critical, build_dual_interval(0, 8, IntervalKind::dual), 0.0,
                            Reading::consistent);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rps_operator(P, N).matrix.data());
}
BENCHMARK(BM_RpsOperator)->Arg(1)->Arg(4)->Arg(16);

static void BM_IsingTransfer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_ising_transfer(n, 0.4).matrix.data());
}
BENCHMARK(BM_IsingTransfer)->DenseRange(2, 8, 2);

static void BM_AtTransfer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_at_transfer(n, 0.3, 0.1).matrix.data());
}
BENCHMARK(BM_AtTransfer)->DenseRange(1, 4);

static void BM_LoopTransfer(benchmark::State& state) {
  const int w = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_loop_transfer(w, 0.6, 1.3).matrix.data());
}
BENCHMARK(BM_LoopTransfer)->DenseRange(1, 5);

static void BM_FockSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto V = build_ising_transfer(n, 0.4);
  auto g = clifford_generators(make_spin_basis(Model::ising, n));
  for (auto _ : state) benchmark::DoNotOptimize(fock_spectrum_from_transfer(V, g).Lambda0);
}
BENCHMARK(BM_FockSpectrum)->DenseRange(2, 4);

static void BM_EnumerateIsing(benchmark::State& state) {
  const SiteGrid g{4, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ising(g, 0.4).Z);
}
BENCHMARK(BM_EnumerateIsing)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
