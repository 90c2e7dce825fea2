#include "fxsr/experiment.hpp"

#include <chrono>
#include <sstream>

namespace fxsr::exp {

void describe(RunManifest& m, const nn::TrainConfig& c) {
    m.set("path", c.path == nn::PrecisionPath::Reference ? "reference" : "fixed");
    m.set("mode", c.path == nn::PrecisionPath::Reference ? "none" : std::string(mode_name(c.mode)));
    m.set("word_bits", std::to_string(c.format.word_bits()));
    m.set("frac_bits", std::to_string(c.format.frac_bits()));
    m.set("digits", std::to_string(c.digits.first) + "," + std::to_string(c.digits.second));
    m.set("epochs", std::to_string(c.epochs));
    m.set("learning_rate", format_fixed(c.learning_rate, 6));
    m.set("hidden", std::to_string(c.hidden_units));
    m.set("batch_size", std::to_string(c.batch_size));
    m.set("eval_full_precision", c.eval_full_precision ? "true" : "false");
    m.set("seed", std::to_string(c.seed));
}

std::vector<TrainRunOutput> run_train(const TrainSweep& sweep, const data::Dataset& dataset,
                                      const RunManifest& extra, const ProgressCallback& progress) {
    std::vector<nn::TrainConfig> configs;
    if (sweep.include_reference) {
        auto c = sweep.base;
        c.path = nn::PrecisionPath::Reference;
        configs.push_back(c);
    }
    for (const auto mode : sweep.modes) {
        auto c = sweep.base;
        c.path = nn::PrecisionPath::Fixed;
        c.mode = mode;
        configs.push_back(c);
    }
    if (configs.empty()) throw std::invalid_argument("train: nothing to run");

    std::vector<TrainRunOutput> outputs;
    for (const auto& config : configs) {
        const std::string name = config.run_name();
        const auto start = std::chrono::steady_clock::now();
        auto result = nn::train(config, dataset, [&](const nn::EpochRecord& r) {
            if (progress) progress(name, r);
        });
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

        TrainRunOutput out{name, result.history, sweep.out_dir / (name + ".csv"),
                           sweep.out_dir / (name + ".params")};
        std::ostringstream csv;
        write_epoch_csv(csv, out.history);
        write_text_file(out.csv, csv.str());
        save_params(out.params, SavedParams{std::move(result.params), config.mode, config.seed,
                                            config.digits});

        RunManifest manifest = extra;
        describe(manifest, config);
        manifest.set("version", FXSR_VERSION);
        manifest.add_output(out.csv);
        manifest.add_output(out.params);
        manifest.set("wall_time_s", format_fixed(elapsed.count(), 3));
        manifest.write_next_to(out.csv);
        outputs.push_back(std::move(out));
    }
    return outputs;
}

Histogram emit_prediction_histogram(const SavedParams& saved, const data::Dataset& dataset,
                                    std::size_t bins) {
    const auto predictions = nn::predict(saved.params, dataset.x_test, saved.mode, saved.seed);
    return make_histogram(predictions, bins);
}

}  // namespace fxsr::exp
