#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Core>

#include "fxsr/fx_matrix.hpp"
#include "fxsr/rng.hpp"
#include "fxsr/rounding.hpp"

namespace fxsr::nn {

// Two-layer binary classifier: ReLU hidden layer, sigmoid output.
// Data is laid out one sample per column: X is n_in x m, Y is 1 x m.

struct RealParams {
    Eigen::MatrixXd w1;  // hidden x n_in
    Eigen::MatrixXd b1;  // hidden x 1
    Eigen::MatrixXd w2;  // 1 x hidden
    Eigen::MatrixXd b2;  // 1 x 1
};

struct NetworkParams {
    FxMatrix w1;
    FxMatrix b1;
    FxMatrix w2;
    FxMatrix b2;
};

/// Glorot-uniform weights, n_out x n_in, drawn row-major from `rng` on
/// [-sqrt(6 / (n_in + n_out)), +sqrt(6 / (n_in + n_out))].
Eigen::MatrixXd xavier_init(RngStream& rng, int n_in, int n_out);

/// Xavier weights (W1 then W2 from the same stream) and zero biases.
RealParams init_real_params(RngStream& rng, int n_in, int hidden);

/// Rounds every parameter once, in the order W1, b1, W2, b2.
NetworkParams quantize_params(const RealParams& params, Rounder& rounder);
RealParams to_real(const NetworkParams& params);

double sigmoid(double z) noexcept;

/// Mean binary cross-entropy with predictions clamped to [eps, 1 - eps].
double bce_loss(std::span<const double> predictions, std::span<const double> labels,
                double eps = 1e-7);

/// Class 1 iff the score is >= 0.5.
constexpr int predict_label(double score) noexcept { return score >= 0.5 ? 1 : 0; }

/// Fraction of samples whose predicted label differs from the label.
double classification_error(std::span<const double> predictions, std::span<const double> labels);

// ---- full-precision reference path ----

struct RealCache {
    Eigen::MatrixXd z1, a1, z2, a2;
};

struct RealGradients {
    Eigen::MatrixXd w1, b1, w2, b2;
};

RealCache forward(const RealParams& params, const Eigen::MatrixXd& x);
RealGradients backward(const RealParams& params, const RealCache& cache, const Eigen::MatrixXd& x,
                       const Eigen::MatrixXd& y);
void sgd_update(RealParams& params, const RealGradients& grads, double learning_rate);

/// Mean BCE of the network on (x, y); used by gradient checks.
double cost(const RealParams& params, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

// ---- fixed-point path ----

struct FxCache {
    FxMatrix z1, a1, z2, a2;
};

struct FxGradients {
    FxMatrix w1, b1, w2, b2;
};

/// Z1 = R(R(W1 X) + R(b1)), A1 = R(relu(Z1)), Z2 = R(R(W2 A1) + R(b2)),
/// A2 = R(sigmoid(Z2)). Biases are broadcast across the m columns before
/// their rounding, so each bias entry is rounded once per sample.
FxCache forward(const NetworkParams& params, const FxMatrix& x, Rounder& rounder);

/// E = R(A2 - Y); dW2 = R(E A1^T / m); db2 = R(sum E / m); dA1 = R(W2^T E);
/// dZ1 = R(dA1 * [Z1 > 0]); dW1 = R(dZ1 X^T / m); db1 = R(rowsum dZ1 / m).
/// Products and sums are accumulated exactly and rounded once, after the
/// division by m.
FxGradients backward(const NetworkParams& params, const FxCache& cache, const FxMatrix& x,
                     const FxMatrix& y, Rounder& rounder);

/// P <- P - R(lr * dP). The product is rounded; the difference of two grid
/// values is exact and only saturated.
void sgd_update(NetworkParams& params, const FxGradients& grads, double learning_rate,
                Rounder& rounder);

}  // namespace fxsr::nn
