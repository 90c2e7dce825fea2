#include <benchmark/benchmark.h>

#include "fxsr/linalg.hpp"
#include "fxsr/network.hpp"

using namespace fxsr;

static FxMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    RngStream rng(seed);
    Rounder r(QFormat(16, 8), RoundingMode::NearestEven, rng);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-1.0, 1.0);
    return FxMatrix::quantize(m, r);
}

// Hidden-layer product W1 X for a batch of m samples.
static void BM_Matmul(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const bool wide = state.range(1) != 0;
    const auto w = random_matrix(100, 784, 1);
    const auto x = random_matrix(784, m, 2);
    RngStream rng(3);
    Rounder r(QFormat(16, 8), RoundingMode::RR, rng);
    MatmulOptions opt;
    opt.force_wide = wide;
    for (auto _ : state) benchmark::DoNotOptimize(rounded_matmul(w, x, r, opt));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(100 * 784 * m));
    state.SetLabel(wide ? "int128" : "exact-double");
}
BENCHMARK(BM_Matmul)->Args({64, 0})->Args({64, 1})->Args({1024, 0})->Unit(benchmark::kMillisecond);

static void BM_TrainStep(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    RngStream init(4);
    const auto real = nn::init_real_params(init, 784, 100);
    RngStream rng(5);
    Rounder r(QFormat(16, 8), RoundingMode::RR, rng);
    auto params = nn::quantize_params(real, r);
    const auto x = random_matrix(784, m, 6);
    FxMatrix y(1, m, QFormat(16, 8));
    for (auto _ : state) {
        const auto cache = nn::forward(params, x, r);
        nn::sgd_update(params, nn::backward(params, cache, x, y, r), 0.1, r);
    }
    state.SetLabel("784-100-1 step");
}
BENCHMARK(BM_TrainStep)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
