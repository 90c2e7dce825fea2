#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "fxsr/qformat.hpp"
#include "fxsr/rounding.hpp"

namespace fxsr::exp {

/// Rounded dot-product study: x ~ U[-delta/2, delta/2]^N, y ~ U[0, y_max]^N,
/// result R(R(x) . R(y) / N), repeated n_max times.
struct DotProdConfig {
    std::size_t n = 100;
    std::size_t n_max = 1000;
    QFormat format{16, 8};
    std::vector<RoundingMode> modes{RoundingMode::NearestEven, RoundingMode::CSR, RoundingMode::RR};
    std::uint64_t seed = 42;
    double y_max = 10.0;

    void validate() const;
};

struct ModeStats {
    RoundingMode mode;
    RoundingStats stats;  // abs_bias_sum = sum |rounded - exact|, zero_count = N_z
};

struct DotProdRun {
    std::uint64_t seed;
    std::vector<ModeStats> modes;
};

/// Every mode sees the same x, y draws (one data stream per seed); each mode
/// rounds with its own stream. The exact reference is sum x_i y_i / N of the
/// unrounded inputs.
std::vector<ModeStats> run_dotprod(const DotProdConfig& config);

/// Runs seeds seed, seed + 1, ..., seed + repeats - 1.
std::vector<DotProdRun> run_dotprod_sweep(const DotProdConfig& config, std::size_t repeats);

/// Header seed,mode,n,n_max,abs_bias_sum,zero_count,saturations; one row per
/// (seed, mode) and, for more than one seed, a "mean" row per mode.
void write_dotprod_csv(std::ostream& out, const DotProdConfig& config,
                       const std::vector<DotProdRun>& runs);

}  // namespace fxsr::exp
