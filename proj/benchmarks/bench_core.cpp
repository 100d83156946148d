#include <numbers>

#include <benchmark/benchmark.h>

#include "holo/adiabatic.hpp"
#include "holo/connection.hpp"
#include "holo/holonomy.hpp"

namespace {

using namespace holo;

const GrassmannianPoint kPoint{{0.7, 0.4, 1.1, 0.3, 0.2, 1.3, 2.1, 0.5}};

Loop reference_loop(int steps) {
  PlanarRegion r;
  r.sigma = theta(Pair::p24);
  r.sigma_prime = phi(Pair::p24);
  r.sigma_range = {0.0, std::numbers::pi / 4};
  r.prime_range = {0.0, std::numbers::pi};
  return loop_boundary(r, steps);
}

void BM_BuildUnitary(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_unitary(kPoint));
}
BENCHMARK(BM_BuildUnitary);

void BM_ConnectionNumeric(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(connection_numeric(kPoint, phi(Pair::p13), Subspace::plus));
  }
}
BENCHMARK(BM_ConnectionNumeric);

void BM_FieldNumeric(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(field_strength(kPoint, theta(Pair::p24), phi(Pair::p13), Subspace::plus));
  }
}
BENCHMARK(BM_FieldNumeric);

void BM_HolonomyOrdered(benchmark::State& state) {
  const Loop loop = reference_loop(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(holonomy_ordered(loop));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HolonomyOrdered)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Evolve(benchmark::State& state) {
  const Schedule sched{reference_loop(400), 100.0, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(evolve(sched));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Evolve)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
