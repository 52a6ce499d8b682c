// Copyright 2026 The qnnbench Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// Sensitivity and loss evaluation: the N x P parameter-shift Jacobian
/// (exact or shot-sampled), MSE/BCE losses with their probability-space
/// gradients, and the logit transform used by logit-mode corrections.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qnn/model.hpp"
#include "qnn/sampling.hpp"

namespace qnn {

/// d p_i / d theta_j estimates; each entry is half a difference of
/// probabilities and therefore lies in [-1/2, 1/2].
using JacobianMatrix = Eigen::MatrixXd;

namespace detail {

inline void check_dataset(const CircuitModel& model, const std::vector<InputPoint>& xs) {
    if (model.theta.size() < 1) throw std::invalid_argument("jacobian needs P >= 1 parameters");
    if (xs.empty()) throw std::invalid_argument("jacobian needs N >= 1 data points");
}

}  // namespace detail

/// Exact parameter-shift Jacobian: J_ij = (p(theta + pi/2 e_j; x_i) -
/// p(theta - pi/2 e_j; x_i)) / 2, which equals the analytic derivative for
/// this gate set.
inline JacobianMatrix jacobian_exact(const CircuitModel& model, const std::vector<InputPoint>& xs) {
    detail::check_dataset(model, xs);
    const auto n = static_cast<Eigen::Index>(xs.size());
    const Eigen::Index p = model.theta.size();
    JacobianMatrix jac(n, p);
    CircuitModel work = model;
    constexpr double shift = std::numbers::pi / 2;
    for (Eigen::Index j = 0; j < p; ++j) {
        work.theta[j] = model.theta[j] + shift;
        for (Eigen::Index i = 0; i < n; ++i) jac(i, j) = forward_exact(work, xs[i]);
        work.theta[j] = model.theta[j] - shift;
        for (Eigen::Index i = 0; i < n; ++i)
            jac(i, j) = 0.5 * (jac(i, j) - forward_exact(work, xs[i]));
        work.theta[j] = model.theta[j];
    }
    return jac;
}

/// Shot-sampled Jacobian: every one of the 2NP shifted evaluations draws an
/// independent S-shot binomial estimate from `stream`. Shifted estimates
/// are deliberately left unclipped so the halved difference stays an
/// unbiased derivative estimate; clipping belongs to the forward pass.
inline JacobianMatrix jacobian(const CircuitModel& model, const std::vector<InputPoint>& xs,
                               const Shots& shots, SampleStream& stream) {
    if (shots.is_exact()) return jacobian_exact(model, xs);
    detail::check_dataset(model, xs);
    const auto n = static_cast<Eigen::Index>(xs.size());
    const Eigen::Index p = model.theta.size();
    const std::int64_t s = shots.count();
    JacobianMatrix jac(n, p);
    CircuitModel work = model;
    constexpr double shift = std::numbers::pi / 2;
    for (Eigen::Index j = 0; j < p; ++j) {
        work.theta[j] = model.theta[j] + shift;
        for (Eigen::Index i = 0; i < n; ++i)
            jac(i, j) = sample_probability(forward_exact(work, xs[i]), s, stream);
        work.theta[j] = model.theta[j] - shift;
        for (Eigen::Index i = 0; i < n; ++i)
            jac(i, j) = 0.5 * (jac(i, j) - sample_probability(forward_exact(work, xs[i]), s, stream));
        work.theta[j] = model.theta[j];
    }
    return jac;
}

enum class LossKind { Mse, Bce };

/// r = y - y_hat.
template <typename DerivedY, typename DerivedP>
Eigen::VectorXd residual(const Eigen::MatrixBase<DerivedY>& y,
                         const Eigen::MatrixBase<DerivedP>& y_hat) {
    if (y.size() != y_hat.size()) throw std::invalid_argument("residual: length mismatch");
    return y - y_hat;
}

namespace detail {

template <typename DerivedP>
void check_bce_domain(const Eigen::MatrixBase<DerivedP>& y_hat) {
    if ((y_hat.array() <= 0.0).any() || (y_hat.array() >= 1.0).any())
        throw std::domain_error("BCE requires predictions strictly inside (0, 1)");
}

}  // namespace detail

template <typename DerivedY, typename DerivedP>
double loss(LossKind kind, const Eigen::MatrixBase<DerivedY>& y,
            const Eigen::MatrixBase<DerivedP>& y_hat) {
    if (y.size() != y_hat.size()) throw std::invalid_argument("loss: length mismatch");
    if (kind == LossKind::Mse) return (y - y_hat).squaredNorm() / static_cast<double>(y.size());
    detail::check_bce_domain(y_hat);
    const auto yh = y_hat.array();
    return -(y.array() * yh.log() + (1.0 - y.array()) * (1.0 - yh).log()).mean();
}

/// dLbar/dp, the loss-side factor of the chain rule. MSE: -2 r_i / N.
/// BCE: (p_i - y_i) / (N p_i (1 - p_i)).
template <typename DerivedY, typename DerivedP>
Eigen::VectorXd loss_gradient_wrt_p(LossKind kind, const Eigen::MatrixBase<DerivedY>& y,
                                    const Eigen::MatrixBase<DerivedP>& y_hat) {
    if (y.size() != y_hat.size())
        throw std::invalid_argument("loss_gradient_wrt_p: length mismatch");
    const double n = static_cast<double>(y.size());
    if (kind == LossKind::Mse) return (-2.0 / n) * (y - y_hat);
    detail::check_bce_domain(y_hat);
    const auto yh = y_hat.array();
    return ((yh - y.array()) / (n * yh * (1.0 - yh))).matrix();
}

inline double logit(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("logit requires p in (0, 1)");
    return std::log(p / (1.0 - p));
}

inline double inverse_logit(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// dz/dp = 1 / (p (1 - p)); rescales Jacobian rows and residuals for
/// logit-space corrections.
inline double logit_jacobian_scale(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("logit scale requires p in (0, 1)");
    return 1.0 / (p * (1.0 - p));
}

}  // namespace qnn
