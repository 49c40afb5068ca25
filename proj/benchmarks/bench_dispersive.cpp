#include <benchmark/benchmark.h>

#include "spr/dispersive.hpp"

static void BM_population(benchmark::State& state) {
  double tau = 0.0;
  for (auto _ : state) {
    tau += 1e-3;
    benchmark::DoNotOptimize(spr::cavity_population(tau, 4.27, 7.28));
  }
}
BENCHMARK(BM_population);

BENCHMARK_MAIN();
