#include "fxsr/qformat.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fxsr {

QFormat::QFormat(int word_bits, int frac_bits) : word_bits_(word_bits), frac_bits_(frac_bits) {
    if (word_bits < 2 || word_bits > 64) {
        throw std::invalid_argument("QFormat: word_bits must be in [2, 64], got " +
                                    std::to_string(word_bits));
    }
    if (frac_bits < 0 || frac_bits > word_bits - 1) {
        throw std::invalid_argument("QFormat: frac_bits must be in [0, word_bits - 1], got " +
                                    std::to_string(frac_bits));
    }
}

double QFormat::precision() const noexcept { return std::ldexp(1.0, -frac_bits_); }

double QFormat::scale() const noexcept { return std::ldexp(1.0, frac_bits_); }

std::int64_t QFormat::max_mantissa() const noexcept {
    if (word_bits_ == 64) return std::numeric_limits<std::int64_t>::max();
    return (std::int64_t{1} << (word_bits_ - 1)) - 1;
}

std::int64_t QFormat::min_mantissa() const noexcept {
    if (word_bits_ == 64) return std::numeric_limits<std::int64_t>::min();
    return -(std::int64_t{1} << (word_bits_ - 1));
}

double QFormat::max_value() const noexcept {
    return std::ldexp(static_cast<double>(max_mantissa()), -frac_bits_);
}

double QFormat::min_value() const noexcept {
    return std::ldexp(static_cast<double>(min_mantissa()), -frac_bits_);
}

std::string QFormat::name() const {
    return std::to_string(word_bits_) + "W" + std::to_string(frac_bits_) + "F";
}

double FxValue::value() const noexcept {
    return std::ldexp(static_cast<double>(mantissa), -format.frac_bits());
}

}  // namespace fxsr
