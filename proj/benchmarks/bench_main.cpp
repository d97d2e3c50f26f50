#include "qgl/rmatrix.hpp"

#include <benchmark/benchmark.h>

static void BM_ybe(benchmark::State& state) {
    int N = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(qgl::check_ybe(N));
}
BENCHMARK(BM_ybe)->Arg(1)->Arg(2);

BENCHMARK_MAIN();
