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

/// Parameter-update rules: plain gradient descent, Adam, and the algebraic
/// inverse-probability correction delta = (J^T J + lambda I)^{-1} J^T r,
/// optionally in logit space. The algebraic rule has no learning rate; its
/// config carries only the Tikhonov lambda and the residual space.

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <stdexcept>

#include "qnn/estimator.hpp"

namespace qnn {

struct GdConfig {
    double eta = 0.1;  // positive learning rate
};

struct AdamState {
    double eta = 0.1;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps_hat = 1e-8;
    Eigen::VectorXd m;
    Eigen::VectorXd v;
    long t = 0;

    static AdamState init(Eigen::Index p, double eta = 0.1) {
        AdamState state;
        state.eta = eta;
        state.m = Eigen::VectorXd::Zero(p);
        state.v = Eigen::VectorXd::Zero(p);
        return state;
    }
};

enum class AlgebraicMode { Probability, Logit };

struct AlgebraicConfig {
    double lambda = 0.2;  // Tikhonov regularization, > 0
    AlgebraicMode mode = AlgebraicMode::Probability;
};

template <typename DerivedT, typename DerivedG>
Eigen::VectorXd gd_step(const Eigen::MatrixBase<DerivedT>& theta,
                        const Eigen::MatrixBase<DerivedG>& grad, const GdConfig& cfg) {
    if (theta.size() != grad.size()) throw std::invalid_argument("gd_step: length mismatch");
    return theta - cfg.eta * grad;
}

/// One Adam update; mutates the moment accumulators in place and returns
/// the new parameters.
inline Eigen::VectorXd adam_step(AdamState& state, const Eigen::VectorXd& theta,
                                 const Eigen::VectorXd& grad) {
    if (theta.size() != grad.size() || state.m.size() != theta.size())
        throw std::invalid_argument("adam_step: length mismatch");
    state.t += 1;
    state.m = state.beta1 * state.m + (1.0 - state.beta1) * grad;
    state.v = state.beta2 * state.v + (1.0 - state.beta2) * grad.cwiseProduct(grad);
    const double m_scale = 1.0 / (1.0 - std::pow(state.beta1, state.t));
    const double v_scale = 1.0 / (1.0 - std::pow(state.beta2, state.t));
    return theta - state.eta * (m_scale * state.m.array() /
                                ((v_scale * state.v.array()).sqrt() + state.eps_hat))
                                   .matrix();
}

/// Algebraic inverse-probability correction. Solves the SPD normal system
/// (J^T J + lambda I) delta = J^T r by Cholesky and returns theta + delta.
/// In logit mode, row i of J and the residual are first mapped to z-space:
/// the row is scaled by 1/(p_i(1-p_i)) and the residual becomes
/// logit(clip(y_i)) - logit(p_i), with p the supplied predictions.
inline Eigen::VectorXd algebraic_step(const Eigen::VectorXd& theta, const JacobianMatrix& jac,
                                      const Eigen::VectorXd& res, const AlgebraicConfig& cfg,
                                      const Eigen::VectorXd* predictions = nullptr) {
    if (!(cfg.lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    if (jac.rows() != res.size() || jac.cols() != theta.size())
        throw std::invalid_argument("algebraic_step: dimension mismatch");
    if (!jac.allFinite() || !res.allFinite())
        throw std::domain_error("algebraic_step: non-finite Jacobian or residual");

    const Eigen::Index p = theta.size();
    Eigen::MatrixXd a(p, p);
    Eigen::VectorXd b(p);
    if (cfg.mode == AlgebraicMode::Logit) {
        if (predictions == nullptr || predictions->size() != res.size())
            throw std::invalid_argument("logit mode requires predictions of length N");
        Eigen::MatrixXd jac_z = jac;
        Eigen::VectorXd res_z(res.size());
        for (Eigen::Index i = 0; i < res.size(); ++i) {
            const double pred = (*predictions)[i];
            if (!(pred > 0.0 && pred < 1.0))
                throw std::domain_error("logit mode requires predictions inside (0, 1)");
            jac_z.row(i) *= logit_jacobian_scale(pred);
            res_z[i] = logit(clip_probability(res[i] + pred)) - logit(pred);
        }
        a.noalias() = jac_z.transpose() * jac_z;
        b.noalias() = jac_z.transpose() * res_z;
    } else {
        a.noalias() = jac.transpose() * jac;
        b.noalias() = jac.transpose() * res;
    }
    a.diagonal().array() += cfg.lambda;
    return theta + a.llt().solve(b);
}

}  // namespace qnn
