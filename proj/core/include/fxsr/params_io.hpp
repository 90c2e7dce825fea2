#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>

#include "fxsr/mnist.hpp"
#include "fxsr/network.hpp"
#include "fxsr/rounding.hpp"

namespace fxsr::exp {

/// Trained parameters plus what is needed to run them again.
struct SavedParams {
    std::variant<nn::RealParams, nn::NetworkParams> params;
    RoundingMode mode = RoundingMode::NearestEven;  // ignored for real params
    std::uint64_t seed = 0;
    data::DigitPair digits;
};

/// JSON text. Fixed-point parameters are stored as integer mantissas, so a
/// save/load round trip is exact.
std::string params_to_json(const SavedParams& saved);
SavedParams params_from_json(const std::string& text);

void save_params(const std::filesystem::path& path, const SavedParams& saved);
SavedParams load_params(const std::filesystem::path& path);

}  // namespace fxsr::exp
