#include "fxsr/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fxsr {
namespace {

using RowMajorXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr int kWideValueBits = 127;

// Number of significant bits of |v|.
int bit_width(wide_int v) {
    unsigned __int128 u = v < 0 ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    int bits = 0;
    while (u != 0) {
        u >>= 1;
        ++bits;
    }
    return bits;
}

RowMajorXd as_doubles(const FxMatrix& m) {
    RowMajorXd out(m.rows(), m.cols());
    auto src = m.mantissas();
    double* dst = out.data();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = static_cast<double>(src[i]);
    return out;
}

void require_positive(std::int64_t divisor) {
    if (divisor <= 0) throw std::invalid_argument("divisor must be positive");
}

// Exact mantissa of a at fractional scale `frac` (frac >= a's frac bits).
wide_int aligned(std::int64_t mantissa, int from_frac, int to_frac) {
    return static_cast<wide_int>(mantissa) << (to_frac - from_frac);
}

}  // namespace

WideAccumulator::WideAccumulator(const QFormat& lhs, const QFormat& rhs, std::size_t terms)
    : headroom_bits_(required_headroom(terms)), frac_bits_(lhs.frac_bits() + rhs.frac_bits()) {
    // |a| <= 2^(wa-1), |b| <= 2^(wb-1): a product needs wa + wb - 1 value bits.
    const int needed = lhs.word_bits() + rhs.word_bits() - 1 + headroom_bits_;
    if (needed > kWideValueBits) {
        throw std::overflow_error("WideAccumulator: " + std::to_string(terms) + " products of " +
                                  lhs.name() + " x " + rhs.name() + " need " +
                                  std::to_string(needed) + " bits");
    }
}

int WideAccumulator::required_headroom(std::size_t terms) noexcept {
    if (terms <= 1) return 0;
    return static_cast<int>(std::bit_width(terms - 1));
}

std::int64_t round_exact(wide_int numerator, int frac_bits, std::int64_t divisor,
                         Rounder& rounder) {
    require_positive(divisor);
    const int target = rounder.format().frac_bits();
    if (frac_bits >= target) {
        const int shift = frac_bits - target;
        if (shift + 64 > kWideValueBits) throw std::overflow_error("round_exact: scale gap too large");
        return rounder.round_ratio(numerator, static_cast<wide_int>(divisor) << shift);
    }
    const int shift = target - frac_bits;
    if (bit_width(numerator) + shift > kWideValueBits - 1) {
        throw std::overflow_error("round_exact: numerator too wide to rescale");
    }
    return rounder.round_ratio(numerator << shift, divisor);
}

FxValue rounded_dot(std::span<const std::int64_t> x, const QFormat& x_fmt,
                    std::span<const std::int64_t> y, const QFormat& y_fmt, std::int64_t divisor,
                    Rounder& rounder) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("rounded_dot: length mismatch " + std::to_string(x.size()) +
                                    " vs " + std::to_string(y.size()));
    }
    WideAccumulator acc(x_fmt, y_fmt, x.size());
    for (std::size_t i = 0; i < x.size(); ++i) acc.add_product(x[i], y[i]);
    return {round_exact(acc.value(), acc.frac_bits(), divisor, rounder), rounder.format()};
}

FxValue rounded_dot(const FxMatrix& x_row, const FxMatrix& y_col, std::int64_t divisor,
                    Rounder& rounder) {
    if (x_row.rows() != 1 || y_col.cols() != 1) {
        throw std::invalid_argument("rounded_dot: expected a 1 x N row and an N x 1 column");
    }
    return rounded_dot(x_row.mantissas(), x_row.format(), y_col.mantissas(), y_col.format(),
                       divisor, rounder);
}

FxMatrix rounded_matmul(const FxMatrix& a, const FxMatrix& b, Rounder& rounder,
                        const MatmulOptions& options) {
    require_positive(options.divisor);
    const std::size_t m = options.transpose_a ? a.cols() : a.rows();
    const std::size_t k = options.transpose_a ? a.rows() : a.cols();
    const std::size_t kb = options.transpose_b ? b.cols() : b.rows();
    const std::size_t n = options.transpose_b ? b.rows() : b.cols();
    if (k != kb) {
        throw std::invalid_argument("rounded_matmul: inner dimensions " + std::to_string(k) +
                                    " and " + std::to_string(kb) + " differ");
    }
    WideAccumulator bound_check(a.format(), b.format(), k);
    const int product_frac = bound_check.frac_bits();

    FxMatrix out(m, n, rounder.format());
    auto dst = out.mantissas();

    const long double bound = static_cast<long double>(a.max_abs_mantissa()) *
                              static_cast<long double>(b.max_abs_mantissa()) *
                              static_cast<long double>(k);
    if (!options.force_wide && bound < 0x1.0p53L) {
        const RowMajorXd ad = as_doubles(a);
        const RowMajorXd bd = as_doubles(b);
        RowMajorXd c(m, n);
        if (options.transpose_a && options.transpose_b) {
            c.noalias() = ad.transpose() * bd.transpose();
        } else if (options.transpose_a) {
            c.noalias() = ad.transpose() * bd;
        } else if (options.transpose_b) {
            c.noalias() = ad * bd.transpose();
        } else {
            c.noalias() = ad * bd;
        }
        const double* sums = c.data();
        for (std::size_t i = 0; i < m * n; ++i) {
            const auto exact = static_cast<wide_int>(static_cast<std::int64_t>(sums[i]));
            dst[i] = round_exact(exact, product_frac, options.divisor, rounder);
        }
        return out;
    }

    const auto a_at = [&](std::size_t i, std::size_t j) {
        return options.transpose_a ? a.at(j, i) : a.at(i, j);
    };
    const auto b_at = [&](std::size_t i, std::size_t j) {
        return options.transpose_b ? b.at(j, i) : b.at(i, j);
    };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            WideAccumulator acc(a.format(), b.format(), k);
            for (std::size_t t = 0; t < k; ++t) acc.add_product(a_at(i, t), b_at(t, j));
            dst[i * n + j] = round_exact(acc.value(), product_frac, options.divisor, rounder);
        }
    }
    return out;
}

FxValue rounded_sum_mean(std::span<const FxValue> values, std::int64_t n, Rounder& rounder) {
    require_positive(n);
    if (values.empty()) return {round_exact(0, rounder.format().frac_bits(), n, rounder), rounder.format()};
    const QFormat fmt = values.front().format;
    WideAccumulator acc(fmt, QFormat(2, 0), values.size());
    for (const auto& v : values) {
        if (!(v.format == fmt)) throw std::invalid_argument("rounded_sum_mean: mixed formats");
        acc.add_product(v.mantissa, 1);
    }
    return {round_exact(acc.value(), fmt.frac_bits(), n, rounder), rounder.format()};
}

FxMatrix rounded_row_mean(const FxMatrix& a, std::int64_t divisor, Rounder& rounder) {
    require_positive(divisor);
    FxMatrix out(a.rows(), 1, rounder.format());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        WideAccumulator acc(a.format(), QFormat(2, 0), a.cols());
        for (std::size_t c = 0; c < a.cols(); ++c) acc.add_product(a.at(r, c), 1);
        out.at(r, 0) = round_exact(acc.value(), a.format().frac_bits(), divisor, rounder);
    }
    return out;
}

FxMatrix rounded_elementwise(ElementwiseOp op, const FxMatrix& a, const FxMatrix& b,
                             Rounder& rounder) {
    const bool same = a.rows() == b.rows() && a.cols() == b.cols();
    const bool column = b.rows() == a.rows() && b.cols() == 1;
    const bool scalar = b.rows() == 1 && b.cols() == 1;
    if (!same && !column && !scalar) {
        throw std::invalid_argument("rounded_elementwise: shape " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()) + " does not broadcast to " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    const int fa = a.format().frac_bits();
    const int fb = b.format().frac_bits();
    const int common = std::max(fa, fb);

    FxMatrix out(a.rows(), a.cols(), rounder.format());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            const std::int64_t bv = same ? b.at(r, c) : (column ? b.at(r, 0) : b.at(0, 0));
            const std::int64_t av = a.at(r, c);
            switch (op) {
                case ElementwiseOp::Add:
                    out.at(r, c) =
                        round_exact(aligned(av, fa, common) + aligned(bv, fb, common), common, 1, rounder);
                    break;
                case ElementwiseOp::Sub:
                    out.at(r, c) =
                        round_exact(aligned(av, fa, common) - aligned(bv, fb, common), common, 1, rounder);
                    break;
                case ElementwiseOp::Mul:
                    out.at(r, c) =
                        round_exact(static_cast<wide_int>(av) * bv, fa + fb, 1, rounder);
                    break;
            }
        }
    }
    return out;
}

FxMatrix saturating_sub(const FxMatrix& a, const FxMatrix& b, Rounder& rounder) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("saturating_sub: shape mismatch");
    }
    if (!(a.format() == rounder.format()) || !(b.format() == rounder.format())) {
        throw std::invalid_argument("saturating_sub: operands must share the target format");
    }
    FxMatrix out(a.rows(), a.cols(), rounder.format());
    auto x = a.mantissas();
    auto y = b.mantissas();
    auto dst = out.mantissas();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = rounder.saturate(static_cast<wide_int>(x[i]) - y[i]);
    }
    return out;
}

FxMatrix rounded_scale(const FxMatrix& a, double factor, Rounder& rounder) {
    return rounded_map(a, [factor](double v) { return factor * v; }, rounder);
}

FxMatrix requantize(const FxMatrix& a, Rounder& rounder) {
    FxMatrix out(a.rows(), a.cols(), rounder.format());
    auto src = a.mantissas();
    auto dst = out.mantissas();
    const int f = a.format().frac_bits();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = round_exact(src[i], f, 1, rounder);
    return out;
}

FxMatrix broadcast_column(const FxMatrix& column, std::size_t cols) {
    if (column.cols() != 1) throw std::invalid_argument("broadcast_column: expected a column");
    FxMatrix out(column.rows(), cols, column.format());
    for (std::size_t r = 0; r < column.rows(); ++r) {
        std::fill_n(out.mantissas().begin() + static_cast<std::ptrdiff_t>(r * cols), cols, column.at(r, 0));
    }
    return out;
}

}  // namespace fxsr
