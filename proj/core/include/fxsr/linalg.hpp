#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

#include "fxsr/fx_matrix.hpp"
#include "fxsr/rounding.hpp"

namespace fxsr {

/// Exact integer sum of mantissa products at scale 2^-(fa + fb).
///
/// Construction checks that the N-term sum fits: the operand magnitudes plus
/// ceil(log2 N) bits of growth must stay inside the 127 value bits.
class WideAccumulator {
public:
    WideAccumulator(const QFormat& lhs, const QFormat& rhs, std::size_t terms);

    static int required_headroom(std::size_t terms) noexcept;

    void add_product(std::int64_t lhs, std::int64_t rhs) noexcept {
        value_ += static_cast<wide_int>(lhs) * rhs;
    }

    wide_int value() const noexcept { return value_; }
    int headroom_bits() const noexcept { return headroom_bits_; }
    /// Fractional bits of the accumulated value.
    int frac_bits() const noexcept { return frac_bits_; }

private:
    wide_int value_ = 0;
    int headroom_bits_;
    int frac_bits_;
};

/// Rounds (numerator * 2^-frac_bits) / divisor into the rounder's format,
/// with a single rounding of the exact quotient.
std::int64_t round_exact(wide_int numerator, int frac_bits, std::int64_t divisor,
                         Rounder& rounder);

/// R(sum_i x_i y_i / divisor): exact accumulation, one final rounding.
FxValue rounded_dot(std::span<const std::int64_t> x, const QFormat& x_fmt,
                    std::span<const std::int64_t> y, const QFormat& y_fmt, std::int64_t divisor,
                    Rounder& rounder);

/// Row vector (1 x N) times column vector (N x 1).
FxValue rounded_dot(const FxMatrix& x_row, const FxMatrix& y_col, std::int64_t divisor,
                    Rounder& rounder);

struct MatmulOptions {
    bool transpose_a = false;
    bool transpose_b = false;
    /// Every output entry is divided by this before its single rounding.
    std::int64_t divisor = 1;
    /// Skip the exact double-precision GEMM and use the 128-bit loop.
    bool force_wide = false;
};

/// Entry (i, j) = R(row_i(op(A)) . col_j(op(B)) / divisor) in the rounder's
/// format. Draws are consumed in row-major order of the output.
///
/// When max|a| * max|b| * K < 2^53 every partial sum is an integer that a
/// double holds exactly, so an Eigen GEMM yields the exact integer products
/// regardless of summation order; otherwise a 128-bit loop is used.
FxMatrix rounded_matmul(const FxMatrix& a, const FxMatrix& b, Rounder& rounder,
                        const MatmulOptions& options = {});

/// R(sum(v) / n): exact sum with ceil(log2 n) headroom, single rounding.
FxValue rounded_sum_mean(std::span<const FxValue> values, std::int64_t n, Rounder& rounder);

/// Column of R(row sum / divisor).
FxMatrix rounded_row_mean(const FxMatrix& a, std::int64_t divisor, Rounder& rounder);

enum class ElementwiseOp { Add, Sub, Mul };

/// Exact elementwise result, then one rounding per entry. `b` may have the
/// same shape as `a`, be a column (rows x 1) broadcast across columns, or be
/// a 1 x 1 scalar.
FxMatrix rounded_elementwise(ElementwiseOp op, const FxMatrix& a, const FxMatrix& b,
                             Rounder& rounder);

/// a - b with no rounding, saturated to the rounder's format. Both operands
/// must use that format; the difference of two grid values is on the grid.
FxMatrix saturating_sub(const FxMatrix& a, const FxMatrix& b, Rounder& rounder);

/// R(factor * a) per entry.
FxMatrix rounded_scale(const FxMatrix& a, double factor, Rounder& rounder);

/// R(a) per entry (re-rounds values that may already be on the grid).
FxMatrix requantize(const FxMatrix& a, Rounder& rounder);

/// R(fn(a)) per entry; fn is evaluated in double precision.
template <class Fn>
FxMatrix rounded_map(const FxMatrix& a, Fn&& fn, Rounder& rounder) {
    FxMatrix out(a.rows(), a.cols(), rounder.format());
    auto src = a.mantissas();
    auto dst = out.mantissas();
    const int f = a.format().frac_bits();
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = rounder.round_to_mantissa(fn(std::ldexp(static_cast<double>(src[i]), -f)));
    }
    return out;
}

/// Repeats a column across `cols` columns (exact).
FxMatrix broadcast_column(const FxMatrix& column, std::size_t cols);

}  // namespace fxsr
