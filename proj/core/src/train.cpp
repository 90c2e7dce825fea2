#include "fxsr/train.hpp"

#include <algorithm>
#include <stdexcept>

#include "fxsr/linalg.hpp"

namespace fxsr::nn {
namespace {

constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kRoundingStream = 16;
constexpr std::uint64_t kEvalStream = 32;
constexpr std::uint64_t kPredictStream = 48;

std::uint64_t mode_index(RoundingMode mode) { return static_cast<std::uint64_t>(mode); }

std::vector<double> row_values(const Eigen::MatrixXd& row) {
    return {row.data(), row.data() + row.size()};
}

std::vector<double> row_values(const FxMatrix& row) {
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.cols(); ++j) out[j] = row.value(0, j);
    return out;
}

FxMatrix exact_labels(const Eigen::MatrixXd& y, Rounder& rounder) {
    FxMatrix out(1, static_cast<std::size_t>(y.cols()), rounder.format());
    const std::int64_t one = std::int64_t{1} << rounder.format().frac_bits();
    for (Eigen::Index j = 0; j < y.cols(); ++j) out.at(0, j) = rounder.saturate(y(0, j) > 0.5 ? one : 0);
    return out;
}

FxMatrix column_block(const FxMatrix& m, std::size_t start, std::size_t count) {
    FxMatrix out(m.rows(), count, m.format());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::copy_n(m.mantissas().begin() + static_cast<std::ptrdiff_t>(r * m.cols() + start), count,
                    out.mantissas().begin() + static_cast<std::ptrdiff_t>(r * count));
    }
    return out;
}

struct Evaluation {
    double error;
    double loss;
};

Evaluation score(const std::vector<double>& predictions, const Eigen::MatrixXd& y) {
    const auto labels = row_values(y);
    return {classification_error(predictions, labels), bce_loss(predictions, labels)};
}

std::vector<std::pair<std::size_t, std::size_t>> batches(std::size_t m, std::size_t batch_size) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t step = batch_size == 0 ? m : batch_size;
    for (std::size_t start = 0; start < m; start += step) out.emplace_back(start, std::min(step, m - start));
    return out;
}

TrainResult train_reference(const TrainConfig& config, const data::Dataset& ds, RealParams params,
                            const EpochCallback& on_epoch) {
    TrainResult result;
    const auto evaluate = [&](int epoch) {
        const auto train_eval = score(row_values(forward(params, ds.x_train).a2), ds.y_train);
        const auto test_eval = score(row_values(forward(params, ds.x_test).a2), ds.y_test);
        EpochRecord rec{epoch, train_eval.error, test_eval.error, train_eval.loss, 0};
        result.history.push_back(rec);
        if (on_epoch) on_epoch(rec);
    };
    evaluate(0);
    const auto plan = batches(static_cast<std::size_t>(ds.x_train.cols()), config.batch_size);
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        for (const auto& [start, count] : plan) {
            const auto n = static_cast<Eigen::Index>(count);
            const Eigen::MatrixXd x = ds.x_train.middleCols(static_cast<Eigen::Index>(start), n);
            const Eigen::MatrixXd y = ds.y_train.middleCols(static_cast<Eigen::Index>(start), n);
            const auto cache = forward(params, x);
            sgd_update(params, backward(params, cache, x, y), config.learning_rate);
        }
        evaluate(epoch);
    }
    result.params = std::move(params);
    return result;
}

TrainResult train_fixed(const TrainConfig& config, const data::Dataset& ds, const RealParams& init,
                        const EpochCallback& on_epoch) {
    RngStream rounding_rng = RngStream::derive(config.seed, kRoundingStream + mode_index(config.mode));
    RngStream eval_rng = RngStream::derive(config.seed, kEvalStream + mode_index(config.mode));
    Rounder rounder(config.format, config.mode, rounding_rng);
    Rounder eval_rounder(config.format, config.mode, eval_rng);

    NetworkParams params = quantize_params(init, rounder);
    const FxMatrix x_train = FxMatrix::quantize(ds.x_train, rounder);
    const FxMatrix x_test = FxMatrix::quantize(ds.x_test, rounder);
    const FxMatrix y_train = exact_labels(ds.y_train, rounder);

    TrainResult result;
    const auto predictions = [&](const FxMatrix& xq, const Eigen::MatrixXd& x_real) {
        if (config.eval_full_precision) return row_values(forward(to_real(params), x_real).a2);
        return row_values(forward(params, xq, eval_rounder).a2);
    };
    const auto evaluate = [&](int epoch) {
        const auto train_eval = score(predictions(x_train, ds.x_train), ds.y_train);
        const auto test_eval = score(predictions(x_test, ds.x_test), ds.y_test);
        EpochRecord rec{epoch, train_eval.error, test_eval.error, train_eval.loss, rounder.saturations()};
        rounder.reset_saturations();
        result.history.push_back(rec);
        if (on_epoch) on_epoch(rec);
    };
    evaluate(0);

    const auto plan = batches(x_train.cols(), config.batch_size);
    const bool full_batch = plan.size() == 1;
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        for (const auto& [start, count] : plan) {
            if (full_batch) {
                const auto cache = forward(params, x_train, rounder);
                sgd_update(params, backward(params, cache, x_train, y_train, rounder),
                           config.learning_rate, rounder);
                continue;
            }
            const FxMatrix x = column_block(x_train, start, count);
            const FxMatrix y = column_block(y_train, start, count);
            const auto cache = forward(params, x, rounder);
            sgd_update(params, backward(params, cache, x, y, rounder), config.learning_rate, rounder);
        }
        evaluate(epoch);
    }
    result.params = std::move(params);
    return result;
}

}  // namespace

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
    if (epochs < 0) throw std::invalid_argument("epochs must be non-negative");
    if (hidden_units <= 0) throw std::invalid_argument("hidden units must be positive");
    digits.validate();
}

std::string TrainConfig::run_name() const {
    return path == PrecisionPath::Reference ? std::string("reference") : std::string(mode_name(mode));
}

TrainResult train(const TrainConfig& config, const data::Dataset& dataset, const EpochCallback& on_epoch) {
    config.validate();
    if (dataset.x_train.cols() == 0 || dataset.x_test.cols() == 0) {
        throw std::invalid_argument("train: empty dataset");
    }
    RngStream init_rng = RngStream::derive(config.seed, kInitStream);
    RealParams init = init_real_params(init_rng, static_cast<int>(dataset.x_train.rows()),
                                       config.hidden_units);
    if (config.path == PrecisionPath::Reference) {
        return train_reference(config, dataset, std::move(init), on_epoch);
    }
    return train_fixed(config, dataset, init, on_epoch);
}

std::vector<double> predict(const std::variant<RealParams, NetworkParams>& params,
                            const Eigen::MatrixXd& x, RoundingMode mode, std::uint64_t seed) {
    if (const auto* real = std::get_if<RealParams>(&params)) {
        return row_values(forward(*real, x).a2);
    }
    const auto& fixed = std::get<NetworkParams>(params);
    RngStream rng = RngStream::derive(seed, kPredictStream + mode_index(mode));
    Rounder rounder(fixed.w1.format(), mode, rng);
    const FxMatrix xq = FxMatrix::quantize(x, rounder);
    return row_values(forward(fixed, xq, rounder).a2);
}

}  // namespace fxsr::nn
