#pragma once

#include <cstdint>
#include <string>

namespace fxsr {

/// Signed fixed-point layout: `word_bits` total bits (one of them the sign)
/// of which `frac_bits` sit below the binary point. A value is an integer
/// mantissa scaled by 2^-frac_bits.
class QFormat {
public:
    /// Throws std::invalid_argument unless 2 <= word_bits <= 64 and
    /// 0 <= frac_bits <= word_bits - 1.
    QFormat(int word_bits, int frac_bits);

    int word_bits() const noexcept { return word_bits_; }
    int frac_bits() const noexcept { return frac_bits_; }
    int int_bits() const noexcept { return word_bits_ - 1 - frac_bits_; }

    /// Grid spacing 2^-frac_bits.
    double precision() const noexcept;
    /// Scale factor 2^frac_bits that maps a value onto the integer grid.
    double scale() const noexcept;

    std::int64_t max_mantissa() const noexcept;
    std::int64_t min_mantissa() const noexcept;
    double max_value() const noexcept;
    double min_value() const noexcept;

    bool contains(std::int64_t mantissa) const noexcept {
        return mantissa >= min_mantissa() && mantissa <= max_mantissa();
    }

    /// "16W8F" style label.
    std::string name() const;

    friend bool operator==(const QFormat&, const QFormat&) = default;

private:
    int word_bits_;
    int frac_bits_;
};

/// A fixed-point scalar: value = mantissa * 2^-frac_bits, exactly.
struct FxValue {
    std::int64_t mantissa = 0;
    QFormat format{16, 8};

    double value() const noexcept;

    friend bool operator==(const FxValue&, const FxValue&) = default;
};

}  // namespace fxsr
