#include <benchmark/benchmark.h>

#include "zml/arithmetic.hpp"
#include "zml/special.hpp"

namespace {

void BM_Theta(benchmark::State& state) {
    const zml::ExtReal t(static_cast<double>(state.range(0)) + 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(zml::theta(t));
}
BENCHMARK(BM_Theta)->Arg(100)->Arg(100000);

void BM_HardyZ(benchmark::State& state) {
    const zml::ExtReal t(static_cast<double>(state.range(0)) + 0.25);
    for (auto _ : state) benchmark::DoNotOptimize(zml::hardy_z(t));
}
BENCHMARK(BM_HardyZ)->Arg(500)->Arg(5000)->Arg(100000)->Arg(2000000);

void BM_ZetaEulerMaclaurin(benchmark::State& state) {
    const zml::ExtComplex s(0.75, static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(zml::zeta_critical(s));
}
BENCHMARK(BM_ZetaEulerMaclaurin)->Arg(100)->Arg(1000);

void BM_Sieve(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(zml::sieve_tables(state.range(0)));
}
BENCHMARK(BM_Sieve)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace
