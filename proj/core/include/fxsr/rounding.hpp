#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "fxsr/qformat.hpp"
#include "fxsr/rng.hpp"

namespace fxsr {

/// Exact accumulator type for products and rational numerators.
using wide_int = __int128;

/// Every mode rounds x to one of its two neighbouring grid points,
/// floor(x) (with probability p(x)) or floor(x) + delta.
enum class RoundingMode : std::uint8_t {
    Floor,
    Ceil,
    NearestEven,
    CSR,  ///< p(x) = 1 - (x - floor(x)) / delta, unbiased
    RR,   ///< p(x) = 1/2 for every x, including grid points
};

constexpr bool is_stochastic(RoundingMode mode) noexcept {
    return mode == RoundingMode::CSR || mode == RoundingMode::RR;
}

/// Short CLI names: floor, ceil, rn, csr, rr.
std::string_view mode_name(RoundingMode mode) noexcept;
/// Accepts the short names (and "nearest" for rn); throws std::invalid_argument.
RoundingMode parse_rounding_mode(std::string_view text);
/// Comma-separated list, e.g. "rn,csr,rr".
std::vector<RoundingMode> parse_mode_list(std::string_view text);

/// Error bookkeeping for repeated roundings (dot-product study, training).
struct RoundingStats {
    double abs_bias_sum = 0.0;
    std::uint64_t zero_count = 0;
    std::uint64_t op_count = 0;
    std::uint64_t saturation_count = 0;

    /// Adds one rounded result against its exact value.
    void record(double rounded, double exact) noexcept;
};

/// Largest multiple of the format's precision that is <= x.
double floor_to_grid(double x, const QFormat& fmt);

/// Probability of rounding x down to floor_to_grid(x).
double probability(RoundingMode mode, double x, const QFormat& fmt);

/// Expected rounded value floor(x) p + (floor(x) + delta)(1 - p).
double expected_value(double x, const QFormat& fmt, RoundingMode mode);

/// expected_value(x) - x.
double bias(double x, const QFormat& fmt, RoundingMode mode);

/// delta^2 p (1 - p).
double variance_of(double p, const QFormat& fmt);

/// Rounds reals and exact rationals into one format with one mode.
///
/// Stochastic modes take exactly one draw from the stream per rounding (also
/// for inputs already on the grid); deterministic modes never draw. Results
/// outside the format saturate to its extreme mantissa and are counted.
class Rounder {
public:
    Rounder(QFormat fmt, RoundingMode mode, RngStream& rng) : fmt_(fmt), mode_(mode), rng_(&rng) {}

    const QFormat& format() const noexcept { return fmt_; }
    RoundingMode mode() const noexcept { return mode_; }
    RngStream& rng() noexcept { return *rng_; }

    FxValue round(double x) { return {round_to_mantissa(x), fmt_}; }

    /// Scale by 2^frac_bits, round on the integer grid, return the mantissa.
    std::int64_t round_to_mantissa(double x);

    /// Rounds a value already expressed in grid units.
    std::int64_t round_scaled(double scaled);

    /// Rounds the exact rational num / den given in grid units; den > 0.
    std::int64_t round_ratio(wide_int num, wide_int den);

    /// Clamps an exact mantissa into range, counting a saturation if needed.
    std::int64_t saturate(wide_int mantissa) noexcept;

    std::uint64_t saturations() const noexcept { return saturations_; }
    void reset_saturations() noexcept { saturations_ = 0; }

private:
    QFormat fmt_;
    RoundingMode mode_;
    RngStream* rng_;
    std::uint64_t saturations_ = 0;
};

/// One rounding of x (scale, round with delta = 1, rescale). Saturation is
/// added to stats->saturation_count when stats is given.
FxValue round_value(double x, const QFormat& fmt, RoundingMode mode, RngStream& rng,
                    RoundingStats* stats = nullptr);

}  // namespace fxsr
