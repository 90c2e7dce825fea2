#include <benchmark/benchmark.h>

#include <vector>

#include "fxsr/rounding.hpp"

using namespace fxsr;

static std::vector<double> inputs(std::size_t n) {
    RngStream rng(7);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(-4.0, 4.0);
    return v;
}

static void BM_RoundScalar(benchmark::State& state) {
    const auto mode = static_cast<RoundingMode>(state.range(0));
    const auto xs = inputs(4096);
    RngStream rng(1);
    Rounder r(QFormat(16, 8), mode, rng);
    for (auto _ : state) {
        std::int64_t acc = 0;
        for (const double x : xs) acc += r.round_to_mantissa(x);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(xs.size()));
    state.SetLabel(std::string(mode_name(mode)));
}
BENCHMARK(BM_RoundScalar)->DenseRange(0, 4);

static void BM_RoundRatio(benchmark::State& state) {
    const auto mode = static_cast<RoundingMode>(state.range(0));
    RngStream rng(2);
    Rounder r(QFormat(16, 8), mode, rng);
    wide_int num = 123456789;
    for (auto _ : state) {
        benchmark::DoNotOptimize(r.round_ratio(num, 784 * 11867));
        num += 977;
    }
    state.SetLabel(std::string(mode_name(mode)));
}
BENCHMARK(BM_RoundRatio)->DenseRange(0, 4);

static void BM_RngUniform(benchmark::State& state) {
    RngStream rng(3);
    for (auto _ : state) benchmark::DoNotOptimize(rng.next_uniform());
}
BENCHMARK(BM_RngUniform);

BENCHMARK_MAIN();
