#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace fxsr::data {

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Decoded IDX file: big-endian dimension sizes and an unsigned byte payload.
struct IdxTensor {
    std::uint32_t magic = 0;
    std::vector<std::uint32_t> dims;
    std::vector<std::uint8_t> bytes;

    std::size_t count() const { return dims.empty() ? 0 : dims.front(); }
    /// Bytes per item (product of all but the first dimension).
    std::size_t item_size() const;
};

/// Parses an in-memory IDX image (0x803) or label (0x801) file. Throws
/// DataError on an unknown magic, a short header or a payload whose length
/// differs from the product of the dimensions.
IdxTensor parse_idx(std::span<const std::uint8_t> raw);
IdxTensor load_idx(const std::filesystem::path& path);

struct DigitPair {
    int first = 6;
    int second = 9;

    /// Throws std::invalid_argument unless both digits are in 0-9 and distinct.
    void validate() const;
    int positive() const noexcept { return first > second ? first : second; }
    std::string label() const { return std::to_string(first) + std::to_string(second); }
};

/// Parses "6,9".
DigitPair parse_digit_pair(const std::string& text);

/// Two-digit binary task, one sample per column, pixels scaled to [0, 1].
/// The larger digit is class 1. Samples keep their file order.
struct Dataset {
    Eigen::MatrixXd x_train;  // 784 x m_train
    Eigen::MatrixXd y_train;  // 1 x m_train
    Eigen::MatrixXd x_test;
    Eigen::MatrixXd y_test;
    DigitPair pair;
    std::size_t train_positive = 0;
    std::size_t test_positive = 0;
};

Dataset make_pair_dataset(const IdxTensor& train_images, const IdxTensor& train_labels,
                          const IdxTensor& test_images, const IdxTensor& test_labels,
                          DigitPair pair);

/// Standard file names (train-images-idx3-ubyte, ...) under `dir`.
Dataset load_mnist_pair(const std::filesystem::path& dir, DigitPair pair);

}  // namespace fxsr::data
