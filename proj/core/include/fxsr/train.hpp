#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "fxsr/mnist.hpp"
#include "fxsr/network.hpp"
#include "fxsr/qformat.hpp"
#include "fxsr/rounding.hpp"

namespace fxsr::nn {

enum class PrecisionPath { Fixed, Reference };

struct TrainConfig {
    double learning_rate = 0.1;
    int epochs = 30;
    int hidden_units = 100;
    QFormat format{16, 8};
    RoundingMode mode = RoundingMode::RR;
    std::uint64_t seed = 42;
    data::DigitPair digits{6, 9};
    PrecisionPath path = PrecisionPath::Fixed;
    /// 0 selects full-batch gradient descent.
    std::size_t batch_size = 0;
    /// Evaluate fixed-point parameters with the full-precision forward pass.
    bool eval_full_precision = false;

    void validate() const;
    /// "reference" or the mode name.
    std::string run_name() const;
};

struct EpochRecord {
    int epoch = 0;
    double train_error = 0.0;
    double test_error = 0.0;
    double loss = 0.0;
    std::uint64_t saturation_events = 0;
};

struct TrainResult {
    std::vector<EpochRecord> history;  // epoch 0 (initial state) .. epochs
    std::variant<RealParams, NetworkParams> params;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Full-batch (or mini-batch) gradient descent on the dataset. The history
/// starts with the untrained network as epoch 0. Runs with the same seed
/// share the real-valued initialization; each rounding mode gets its own
/// rounding and evaluation streams, so the result is a pure function of the
/// config and the data.
TrainResult train(const TrainConfig& config, const data::Dataset& dataset,
                  const EpochCallback& on_epoch = {});

/// Predictions of trained parameters on x (1 x m). Fixed-point parameters
/// run the quantized forward pass: x is rounded with `mode` and the pass
/// draws from an evaluation stream derived from `seed`.
std::vector<double> predict(const std::variant<RealParams, NetworkParams>& params,
                            const Eigen::MatrixXd& x, RoundingMode mode, std::uint64_t seed);

}  // namespace fxsr::nn
