#include "fxsr/fx_matrix.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace fxsr {

FxMatrix FxMatrix::quantize(const Eigen::MatrixXd& real, Rounder& rounder) {
    FxMatrix out(static_cast<std::size_t>(real.rows()), static_cast<std::size_t>(real.cols()),
                 rounder.format());
    for (Eigen::Index r = 0; r < real.rows(); ++r) {
        for (Eigen::Index c = 0; c < real.cols(); ++c) {
            out.at(r, c) = rounder.round_to_mantissa(real(r, c));
        }
    }
    return out;
}

FxMatrix FxMatrix::from_mantissas(std::size_t rows, std::size_t cols, QFormat fmt,
                                  std::vector<std::int64_t> mantissas) {
    if (mantissas.size() != rows * cols) {
        throw std::invalid_argument("FxMatrix: expected " + std::to_string(rows * cols) +
                                    " mantissas, got " + std::to_string(mantissas.size()));
    }
    for (const auto m : mantissas) {
        if (!fmt.contains(m)) {
            throw std::out_of_range("FxMatrix: mantissa " + std::to_string(m) + " outside " +
                                    fmt.name());
        }
    }
    FxMatrix out(rows, cols, fmt);
    out.mantissas_ = std::move(mantissas);
    return out;
}

Eigen::MatrixXd FxMatrix::to_real() const {
    Eigen::MatrixXd out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = value(r, c);
    }
    return out;
}

FxMatrix FxMatrix::transposed() const {
    FxMatrix out(cols_, rows_, fmt_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
    }
    return out;
}

std::int64_t FxMatrix::max_abs_mantissa() const noexcept {
    std::int64_t best = 0;
    for (const auto m : mantissas_) {
        // |INT64_MIN| does not fit; clamp it to INT64_MAX.
        const std::int64_t a = m == INT64_MIN ? INT64_MAX : std::llabs(m);
        if (a > best) best = a;
    }
    return best;
}

}  // namespace fxsr
