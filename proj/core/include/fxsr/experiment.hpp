#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "fxsr/mnist.hpp"
#include "fxsr/params_io.hpp"
#include "fxsr/report.hpp"
#include "fxsr/train.hpp"

namespace fxsr::exp {

struct TrainSweep {
    nn::TrainConfig base;  // mode and path are overridden per run
    std::vector<RoundingMode> modes{RoundingMode::NearestEven, RoundingMode::CSR, RoundingMode::RR};
    bool include_reference = true;
    std::filesystem::path out_dir = "runs";
};

struct TrainRunOutput {
    std::string name;
    std::vector<nn::EpochRecord> history;
    std::filesystem::path csv;
    std::filesystem::path params;
};

using ProgressCallback = std::function<void(const std::string& run, const nn::EpochRecord&)>;

/// Trains one network per mode, plus the reference path if requested, and
/// writes <out_dir>/<name>.csv, <name>.params and <name>.csv.manifest.
/// `extra` entries are copied into every manifest.
std::vector<TrainRunOutput> run_train(const TrainSweep& sweep, const data::Dataset& dataset,
                                      const RunManifest& extra = {},
                                      const ProgressCallback& progress = {});

/// Manifest entries describing a training config.
void describe(RunManifest& manifest, const nn::TrainConfig& config);

/// Test-set predictions of saved parameters binned over [0, 1].
Histogram emit_prediction_histogram(const SavedParams& saved, const data::Dataset& dataset,
                                    std::size_t bins = 50);

}  // namespace fxsr::exp
