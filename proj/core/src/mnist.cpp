#include "fxsr/mnist.hpp"

#include <fstream>
#include <iterator>

namespace fxsr::data {
namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> raw, std::size_t offset) {
    return (std::uint32_t{raw[offset]} << 24) | (std::uint32_t{raw[offset + 1]} << 16) |
           (std::uint32_t{raw[offset + 2]} << 8) | std::uint32_t{raw[offset + 3]};
}

// Appends the columns of `images` whose label is in `pair`.
void select_pair(const IdxTensor& images, const IdxTensor& labels, DigitPair pair,
                 Eigen::MatrixXd& x, Eigen::MatrixXd& y, std::size_t& positives,
                 const std::string& split) {
    if (images.magic != kIdxImagesMagic || labels.magic != kIdxLabelsMagic) {
        throw DataError(split + ": expected an image file and a label file");
    }
    if (images.count() != labels.count()) {
        throw DataError(split + ": " + std::to_string(images.count()) + " images but " +
                        std::to_string(labels.count()) + " labels");
    }
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < labels.count(); ++i) {
        const int digit = labels.bytes[i];
        if (digit == pair.first || digit == pair.second) picked.push_back(i);
    }
    if (picked.empty()) {
        throw DataError(split + ": no samples for digits " + std::to_string(pair.first) + "/" +
                        std::to_string(pair.second));
    }
    const std::size_t pixels = images.item_size();
    x.resize(static_cast<Eigen::Index>(pixels), static_cast<Eigen::Index>(picked.size()));
    y.resize(1, static_cast<Eigen::Index>(picked.size()));
    positives = 0;
    for (std::size_t c = 0; c < picked.size(); ++c) {
        const std::uint8_t* src = images.bytes.data() + picked[c] * pixels;
        for (std::size_t p = 0; p < pixels; ++p) x(p, c) = src[p] / 255.0;
        const bool positive = labels.bytes[picked[c]] == pair.positive();
        y(0, c) = positive ? 1.0 : 0.0;
        positives += positive ? 1 : 0;
    }
}

}  // namespace

std::size_t IdxTensor::item_size() const {
    std::size_t size = 1;
    for (std::size_t i = 1; i < dims.size(); ++i) size *= dims[i];
    return size;
}

IdxTensor parse_idx(std::span<const std::uint8_t> raw) {
    if (raw.size() < 4) throw DataError("IDX: file shorter than its magic number");
    IdxTensor t;
    t.magic = read_be32(raw, 0);
    std::size_t rank = 0;
    if (t.magic == kIdxImagesMagic) {
        rank = 3;
    } else if (t.magic == kIdxLabelsMagic) {
        rank = 1;
    } else {
        throw DataError("IDX: unsupported magic number " + std::to_string(t.magic));
    }
    const std::size_t header = 4 + 4 * rank;
    if (raw.size() < header) throw DataError("IDX: truncated header");
    std::size_t expected = 1;
    for (std::size_t d = 0; d < rank; ++d) {
        t.dims.push_back(read_be32(raw, 4 + 4 * d));
        expected *= t.dims.back();
    }
    if (raw.size() - header != expected) {
        throw DataError("IDX: payload is " + std::to_string(raw.size() - header) +
                        " bytes, dimensions require " + std::to_string(expected));
    }
    t.bytes.assign(raw.begin() + static_cast<std::ptrdiff_t>(header), raw.end());
    return t;
}

IdxTensor load_idx(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    const std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
    try {
        return parse_idx(raw);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void DigitPair::validate() const {
    if (first < 0 || first > 9 || second < 0 || second > 9) {
        throw std::invalid_argument("digits must be in 0-9");
    }
    if (first == second) throw std::invalid_argument("digit pair must be two distinct digits");
}

DigitPair parse_digit_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("expected digits as 'd1,d2'");
    DigitPair p{std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    p.validate();
    return p;
}

Dataset make_pair_dataset(const IdxTensor& train_images, const IdxTensor& train_labels,
                          const IdxTensor& test_images, const IdxTensor& test_labels,
                          DigitPair pair) {
    pair.validate();
    Dataset ds;
    ds.pair = pair;
    select_pair(train_images, train_labels, pair, ds.x_train, ds.y_train, ds.train_positive, "train");
    select_pair(test_images, test_labels, pair, ds.x_test, ds.y_test, ds.test_positive, "test");
    return ds;
}

Dataset load_mnist_pair(const std::filesystem::path& dir, DigitPair pair) {
    pair.validate();
    return make_pair_dataset(load_idx(dir / "train-images-idx3-ubyte"),
                             load_idx(dir / "train-labels-idx1-ubyte"),
                             load_idx(dir / "t10k-images-idx3-ubyte"),
                             load_idx(dir / "t10k-labels-idx1-ubyte"), pair);
}

}  // namespace fxsr::data
