#include "fxsr/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "fxsr/linalg.hpp"

namespace fxsr::nn {

Eigen::MatrixXd xavier_init(RngStream& rng, int n_in, int n_out) {
    if (n_in <= 0 || n_out <= 0) throw std::invalid_argument("xavier_init: dimensions must be positive");
    const double bound = std::sqrt(6.0 / static_cast<double>(n_in + n_out));
    Eigen::MatrixXd w(n_out, n_in);
    for (int r = 0; r < n_out; ++r) {
        for (int c = 0; c < n_in; ++c) w(r, c) = rng.uniform(-bound, bound);
    }
    return w;
}

RealParams init_real_params(RngStream& rng, int n_in, int hidden) {
    RealParams p;
    p.w1 = xavier_init(rng, n_in, hidden);
    p.b1 = Eigen::MatrixXd::Zero(hidden, 1);
    p.w2 = xavier_init(rng, hidden, 1);
    p.b2 = Eigen::MatrixXd::Zero(1, 1);
    return p;
}

NetworkParams quantize_params(const RealParams& params, Rounder& rounder) {
    auto w1 = FxMatrix::quantize(params.w1, rounder);
    auto b1 = FxMatrix::quantize(params.b1, rounder);
    auto w2 = FxMatrix::quantize(params.w2, rounder);
    auto b2 = FxMatrix::quantize(params.b2, rounder);
    return {std::move(w1), std::move(b1), std::move(w2), std::move(b2)};
}

RealParams to_real(const NetworkParams& params) {
    return {params.w1.to_real(), params.b1.to_real(), params.w2.to_real(), params.b2.to_real()};
}

double sigmoid(double z) noexcept { return 1.0 / (1.0 + std::exp(-z)); }

double bce_loss(std::span<const double> predictions, std::span<const double> labels, double eps) {
    if (predictions.size() != labels.size()) throw std::invalid_argument("bce_loss: size mismatch");
    if (predictions.empty()) return 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < predictions.size(); ++j) {
        const double a = std::clamp(predictions[j], eps, 1.0 - eps);
        const double y = labels[j];
        total += -y * std::log(a) - (1.0 - y) * std::log(1.0 - a);
    }
    return total / static_cast<double>(predictions.size());
}

double classification_error(std::span<const double> predictions, std::span<const double> labels) {
    if (predictions.size() != labels.size()) {
        throw std::invalid_argument("classification_error: size mismatch");
    }
    if (predictions.empty()) return 0.0;
    std::size_t wrong = 0;
    for (std::size_t j = 0; j < predictions.size(); ++j) {
        if (predict_label(predictions[j]) != static_cast<int>(labels[j])) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(predictions.size());
}

RealCache forward(const RealParams& params, const Eigen::MatrixXd& x) {
    RealCache c;
    c.z1 = params.w1 * x;
    c.z1.colwise() += params.b1.col(0);
    c.a1 = c.z1.cwiseMax(0.0);
    c.z2 = params.w2 * c.a1;
    c.z2.array() += params.b2(0, 0);
    c.a2 = c.z2.unaryExpr([](double z) { return sigmoid(z); });
    return c;
}

RealGradients backward(const RealParams& params, const RealCache& cache, const Eigen::MatrixXd& x,
                       const Eigen::MatrixXd& y) {
    const double m = static_cast<double>(x.cols());
    const Eigen::MatrixXd e = cache.a2 - y;
    RealGradients g;
    g.w2 = e * cache.a1.transpose() / m;
    g.b2 = Eigen::MatrixXd::Constant(1, 1, e.sum() / m);
    const Eigen::MatrixXd dz1 =
        ((params.w2.transpose() * e).array() * (cache.z1.array() > 0.0).cast<double>()).matrix();
    g.w1 = dz1 * x.transpose() / m;
    g.b1 = dz1.rowwise().sum() / m;
    return g;
}

void sgd_update(RealParams& params, const RealGradients& grads, double learning_rate) {
    params.w1 -= learning_rate * grads.w1;
    params.b1 -= learning_rate * grads.b1;
    params.w2 -= learning_rate * grads.w2;
    params.b2 -= learning_rate * grads.b2;
}

double cost(const RealParams& params, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    const auto c = forward(params, x);
    return bce_loss({c.a2.data(), static_cast<std::size_t>(c.a2.size())},
                    {y.data(), static_cast<std::size_t>(y.size())});
}

namespace {

FxMatrix relu_gate(const FxMatrix& z1, const QFormat& fmt) {
    FxMatrix gate(z1.rows(), z1.cols(), fmt);
    const std::int64_t one = std::int64_t{1} << fmt.frac_bits();
    auto src = z1.mantissas();
    auto dst = gate.mantissas();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] > 0 ? one : 0;
    return gate;
}

}  // namespace

FxCache forward(const NetworkParams& params, const FxMatrix& x, Rounder& rounder) {
    const std::size_t m = x.cols();
    auto p1 = rounded_matmul(params.w1, x, rounder);
    auto rb1 = requantize(broadcast_column(params.b1, m), rounder);
    auto z1 = rounded_elementwise(ElementwiseOp::Add, p1, rb1, rounder);
    auto a1 = rounded_map(z1, [](double v) { return std::max(v, 0.0); }, rounder);
    auto p2 = rounded_matmul(params.w2, a1, rounder);
    auto rb2 = requantize(broadcast_column(params.b2, m), rounder);
    auto z2 = rounded_elementwise(ElementwiseOp::Add, p2, rb2, rounder);
    auto a2 = rounded_map(z2, [](double v) { return sigmoid(v); }, rounder);
    return {std::move(z1), std::move(a1), std::move(z2), std::move(a2)};
}

FxGradients backward(const NetworkParams& params, const FxCache& cache, const FxMatrix& x,
                     const FxMatrix& y, Rounder& rounder) {
    const auto m = static_cast<std::int64_t>(x.cols());
    auto e = rounded_elementwise(ElementwiseOp::Sub, cache.a2, y, rounder);
    auto dw2 = rounded_matmul(e, cache.a1, rounder, {.transpose_b = true, .divisor = m});
    auto db2 = rounded_row_mean(e, m, rounder);
    auto da1 = rounded_matmul(params.w2, e, rounder, {.transpose_a = true});
    auto dz1 = rounded_elementwise(ElementwiseOp::Mul, da1, relu_gate(cache.z1, rounder.format()),
                                   rounder);
    auto dw1 = rounded_matmul(dz1, x, rounder, {.transpose_b = true, .divisor = m});
    auto db1 = rounded_row_mean(dz1, m, rounder);
    return {std::move(dw1), std::move(db1), std::move(dw2), std::move(db2)};
}

void sgd_update(NetworkParams& params, const FxGradients& grads, double learning_rate,
                Rounder& rounder) {
    const auto step = [&](FxMatrix& p, const FxMatrix& g) {
        p = saturating_sub(p, rounded_scale(g, learning_rate, rounder), rounder);
    };
    step(params.w1, grads.w1);
    step(params.b1, grads.b1);
    step(params.w2, grads.w2);
    step(params.b2, grads.b2);
}

}  // namespace fxsr::nn
