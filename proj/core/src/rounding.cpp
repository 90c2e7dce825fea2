#include "fxsr/rounding.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fxsr {
namespace {

constexpr double kTwo53 = 0x1.0p53;
constexpr double kTwo63 = 0x1.0p63;

// Grid position of x: integer floor and the fractional part in [0, 1).
struct CellPosition {
    double floor;
    double frac;
};

CellPosition locate(double x, const QFormat& fmt) {
    const double scaled = std::ldexp(x, fmt.frac_bits());
    const double fl = std::floor(scaled);
    return {fl, scaled - fl};
}

bool is_odd(double integral) { return std::fmod(integral, 2.0) != 0.0; }

// Round-up decision for a fractional part held as a double in [0, 1).
bool decide_up(RoundingMode mode, double floor, double frac, RngStream& rng) {
    switch (mode) {
        case RoundingMode::Floor:
            return false;
        case RoundingMode::Ceil:
            return frac != 0.0;
        case RoundingMode::NearestEven:
            if (frac != 0.5) return frac > 0.5;
            return is_odd(floor);
        case RoundingMode::CSR: {
            // down iff u < 1 - frac with u = k 2^-53; frac 2^53 is exact, and for
            // integer k the comparison reduces to k < 2^53 - floor(frac 2^53).
            const auto k = rng.next_bits53();
            const auto cut = static_cast<std::uint64_t>(kTwo53 - std::floor(frac * kTwo53));
            return k >= cut;
        }
        case RoundingMode::RR:
            return rng.next_bits53() >= (std::uint64_t{1} << 52);
    }
    return false;
}

// Same decision for an exact fraction rem / den, 0 <= rem < den.
bool decide_up(RoundingMode mode, wide_int floor, wide_int rem, wide_int den, RngStream& rng) {
    switch (mode) {
        case RoundingMode::Floor:
            return false;
        case RoundingMode::Ceil:
            return rem != 0;
        case RoundingMode::NearestEven: {
            const wide_int twice = 2 * rem;
            if (twice != den) return twice > den;
            return (floor & 1) != 0;
        }
        case RoundingMode::CSR: {
            // Keep den * 2^53 inside 127 bits.
            constexpr wide_int limit = wide_int{1} << 72;
            while (den >= limit) {
                den >>= 1;
                rem >>= 1;
            }
            const wide_int k = static_cast<wide_int>(rng.next_bits53());
            return !(k * den < (den - rem) * (wide_int{1} << 53));
        }
        case RoundingMode::RR:
            return rng.next_bits53() >= (std::uint64_t{1} << 52);
    }
    return false;
}

}  // namespace

std::string_view mode_name(RoundingMode mode) noexcept {
    switch (mode) {
        case RoundingMode::Floor: return "floor";
        case RoundingMode::Ceil: return "ceil";
        case RoundingMode::NearestEven: return "rn";
        case RoundingMode::CSR: return "csr";
        case RoundingMode::RR: return "rr";
    }
    return "?";
}

RoundingMode parse_rounding_mode(std::string_view text) {
    if (text == "floor") return RoundingMode::Floor;
    if (text == "ceil") return RoundingMode::Ceil;
    if (text == "rn" || text == "nearest") return RoundingMode::NearestEven;
    if (text == "csr") return RoundingMode::CSR;
    if (text == "rr") return RoundingMode::RR;
    throw std::invalid_argument("unknown rounding mode '" + std::string(text) +
                                "' (expected floor, ceil, rn, csr or rr)");
}

std::vector<RoundingMode> parse_mode_list(std::string_view text) {
    std::vector<RoundingMode> modes;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto token = text.substr(0, comma);
        if (token.empty()) throw std::invalid_argument("empty entry in rounding mode list");
        modes.push_back(parse_rounding_mode(token));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (modes.empty()) throw std::invalid_argument("empty rounding mode list");
    return modes;
}

void RoundingStats::record(double rounded, double exact) noexcept {
    abs_bias_sum += std::fabs(rounded - exact);
    if (rounded == 0.0) ++zero_count;
    ++op_count;
}

double floor_to_grid(double x, const QFormat& fmt) {
    return std::ldexp(std::floor(std::ldexp(x, fmt.frac_bits())), -fmt.frac_bits());
}

double probability(RoundingMode mode, double x, const QFormat& fmt) {
    const auto [fl, frac] = locate(x, fmt);
    switch (mode) {
        case RoundingMode::Floor:
            return 1.0;
        case RoundingMode::Ceil:
            return frac == 0.0 ? 1.0 : 0.0;
        case RoundingMode::NearestEven:
            if (frac < 0.5) return 1.0;
            if (frac > 0.5) return 0.0;
            return is_odd(fl) ? 0.0 : 1.0;
        case RoundingMode::CSR:
            return 1.0 - frac;
        case RoundingMode::RR:
            return 0.5;
    }
    return 1.0;
}

double expected_value(double x, const QFormat& fmt, RoundingMode mode) {
    const double p = probability(mode, x, fmt);
    const double lo = floor_to_grid(x, fmt);
    return lo * p + (lo + fmt.precision()) * (1.0 - p);
}

double bias(double x, const QFormat& fmt, RoundingMode mode) {
    return expected_value(x, fmt, mode) - x;
}

double variance_of(double p, const QFormat& fmt) {
    const double d = fmt.precision();
    return d * d * p * (1.0 - p);
}

std::int64_t Rounder::saturate(wide_int mantissa) noexcept {
    if (mantissa > fmt_.max_mantissa()) {
        ++saturations_;
        return fmt_.max_mantissa();
    }
    if (mantissa < fmt_.min_mantissa()) {
        ++saturations_;
        return fmt_.min_mantissa();
    }
    return static_cast<std::int64_t>(mantissa);
}

std::int64_t Rounder::round_scaled(double scaled) {
    if (std::isnan(scaled)) throw std::invalid_argument("cannot round NaN");
    if (scaled >= kTwo63 || scaled < -kTwo63) {
        if (is_stochastic(mode_)) rng_->next_u64();
        ++saturations_;
        return scaled > 0 ? fmt_.max_mantissa() : fmt_.min_mantissa();
    }
    const double fl = std::floor(scaled);
    const bool up = decide_up(mode_, fl, scaled - fl, *rng_);
    return saturate(static_cast<wide_int>(static_cast<std::int64_t>(fl)) + (up ? 1 : 0));
}

std::int64_t Rounder::round_to_mantissa(double x) {
    return round_scaled(std::ldexp(x, fmt_.frac_bits()));
}

std::int64_t Rounder::round_ratio(wide_int num, wide_int den) {
    if (den <= 0) throw std::invalid_argument("round_ratio: denominator must be positive");
    wide_int q;
    wide_int r;
    constexpr wide_int lo = INT64_MIN;
    constexpr wide_int hi = INT64_MAX;
    if (num >= lo && num <= hi && den <= hi) {
        // 64-bit division is several times cheaper than the 128-bit one.
        const auto n64 = static_cast<std::int64_t>(num);
        const auto d64 = static_cast<std::int64_t>(den);
        q = n64 / d64;
        r = n64 % d64;
    } else {
        q = num / den;
        r = num % den;
    }
    if (r < 0) {
        q -= 1;
        r += den;
    }
    const bool up = decide_up(mode_, q, r, den, *rng_);
    return saturate(q + (up ? 1 : 0));
}

FxValue round_value(double x, const QFormat& fmt, RoundingMode mode, RngStream& rng,
                    RoundingStats* stats) {
    Rounder rounder(fmt, mode, rng);
    const FxValue out = rounder.round(x);
    if (stats != nullptr) stats->saturation_count += rounder.saturations();
    return out;
}

}  // namespace fxsr
