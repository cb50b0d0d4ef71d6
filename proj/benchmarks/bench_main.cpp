#include <benchmark/benchmark.h>

#include "lowscat/config.hpp"
#include "lowscat/halfline.hpp"
#include "lowscat/lowenergy.hpp"
#include "lowscat/properties.hpp"
#include "lowscat/propagate.hpp"
#include "lowscat/zeroenergy.hpp"

using namespace lowscat;

namespace {

PotentialSpec mixed() {
  Rng rng(7);
  return random_mixed(rng, -2.0, 2.0, 3.0, false, 1.0);
}

void BM_TransferMatrix(benchmark::State& state) {
  const PotentialSpec s = mixed();
  const SupportWindow w = truncate(s, 1e-12, 0);
  const double k = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(transfer_matrix(s, k, w).m);
}
BENCHMARK(BM_TransferMatrix)->Arg(1)->Arg(10)->Arg(100);

void BM_DysonTransfer(benchmark::State& state) {
  const PotentialSpec s = make_barrier(Complex(2.0, 1.0), 0.0, 1.0, 1.0);
  const SupportWindow w = support_hull(s);
  for (auto _ : state)
    benchmark::DoNotOptimize(dyson_transfer(s, 1.0, w, static_cast<int>(state.range(0))).tm.m);
}
BENCHMARK(BM_DysonTransfer)->Arg(4)->Arg(12);

void BM_SolvePhi(benchmark::State& state) {
  const PotentialSpec s = mixed();
  const SupportWindow w = truncate(s, 1e-12, 3);
  for (auto _ : state) benchmark::DoNotOptimize(full_coefficients(solve_phi(s, w)).a1);
}
BENCHMARK(BM_SolvePhi);

void BM_LaurentExpansion(benchmark::State& state) {
  const PotentialSpec s = mixed();
  const ZeroEnergyField f = solve_phi(s, truncate(s, 1e-12, 3));
  for (auto _ : state)
    benchmark::DoNotOptimize(laurent_expansion(f, static_cast<int>(state.range(0))).coeffs.back());
}
BENCHMARK(BM_LaurentExpansion)->Arg(3)->Arg(12);

void BM_M0Dyson(benchmark::State& state) {
  const PotentialSpec s = mixed();
  const SupportWindow w = truncate(s, 1e-12, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(m0_dyson(s, w, static_cast<int>(state.range(0))).m0.m0);
}
BENCHMARK(BM_M0Dyson)->Arg(4)->Arg(12);

void BM_HalfLineReflection(benchmark::State& state) {
  const HalfLineProblem p{make_barrier(3.0, 0.4, 1.0, 1.0), BoundaryCondition{1.0, 0.5, {}}};
  for (auto _ : state) benchmark::DoNotOptimize(reflection(p, 0.8));
}
BENCHMARK(BM_HalfLineReflection);

}  // namespace

BENCHMARK_MAIN();
