#include <benchmark/benchmark.h>

#include "zml/zeros.hpp"

namespace {

void BM_IsolateZeros(benchmark::State& state) {
    const double lo = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(zml::isolate_zeros(zml::ExtReal(lo), zml::ExtReal(lo + 50.0)));
}
BENCHMARK(BM_IsolateZeros)->Arg(1000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_BuildCache(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(zml::build_zero_cache(zml::ExtReal(1000.0)));
}
BENCHMARK(BM_BuildCache)->Unit(benchmark::kMillisecond);

}  // namespace
