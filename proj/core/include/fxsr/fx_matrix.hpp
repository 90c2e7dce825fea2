#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "fxsr/qformat.hpp"
#include "fxsr/rounding.hpp"

namespace fxsr {

/// Dense row-major matrix of mantissas sharing one format.
class FxMatrix {
public:
    FxMatrix(std::size_t rows, std::size_t cols, QFormat fmt)
        : rows_(rows), cols_(cols), fmt_(fmt), mantissas_(rows * cols, 0) {}

    /// Rounds every entry of a real matrix, row-major draw order.
    static FxMatrix quantize(const Eigen::MatrixXd& real, Rounder& rounder);

    /// Exact copy; throws std::out_of_range if an entry is outside the format.
    static FxMatrix from_mantissas(std::size_t rows, std::size_t cols, QFormat fmt,
                                   std::vector<std::int64_t> mantissas);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return mantissas_.size(); }
    const QFormat& format() const noexcept { return fmt_; }

    std::int64_t& at(std::size_t r, std::size_t c) noexcept { return mantissas_[r * cols_ + c]; }
    std::int64_t at(std::size_t r, std::size_t c) const noexcept { return mantissas_[r * cols_ + c]; }

    std::span<std::int64_t> mantissas() noexcept { return mantissas_; }
    std::span<const std::int64_t> mantissas() const noexcept { return mantissas_; }

    double value(std::size_t r, std::size_t c) const noexcept {
        return FxValue{at(r, c), fmt_}.value();
    }
    FxValue element(std::size_t r, std::size_t c) const noexcept { return {at(r, c), fmt_}; }

    Eigen::MatrixXd to_real() const;
    FxMatrix transposed() const;
    std::int64_t max_abs_mantissa() const noexcept;

    friend bool operator==(const FxMatrix&, const FxMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    QFormat fmt_;
    std::vector<std::int64_t> mantissas_;
};

}  // namespace fxsr
