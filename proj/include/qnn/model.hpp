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

/// The QNN under study: per-qubit Rx/Ry angle encoding, L variational
/// layers of [Ry on every qubit, Rx on every qubit, CNOT chain], and the
/// Born-rule probability of |1...1> as the scalar model output.
///
/// Parameters: 2 per qubit per layer, so P = 4L for the two-qubit model
/// used by the benchmark. Layer l owns theta[2n*l .. 2n*(l+1)) ordered as
/// [Ry angles q0..q_{n-1}, Rx angles q0..q_{n-1}].
///
/// Noise: with p_deph > 0 the forward pass runs on the density matrix and
/// dephases every qubit after each variational layer (not after encoding).

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "qnn/sampling.hpp"
#include "qnn/statesim.hpp"

namespace qnn {

/// One classical input; features are angles in radians, one per qubit.
struct InputPoint {
    Eigen::VectorXd features;
};

struct CircuitModel {
    int n_qubits = 2;
    int depth = 1;           // L variational layers (0 permitted: encoding only)
    Eigen::VectorXd theta;   // 2 * n_qubits * depth angles
    double p_deph = 0.0;
};

inline int params_per_layer(int n_qubits) { return 2 * n_qubits; }

inline Eigen::Index param_count(const CircuitModel& model) {
    return Eigen::Index{params_per_layer(model.n_qubits)} * model.depth;
}

inline void validate_model(const CircuitModel& model) {
    detail::check_n_qubits(model.n_qubits);
    if (model.depth < 0) throw std::invalid_argument("model depth must be >= 0");
    if (model.theta.size() != param_count(model))
        throw std::invalid_argument("theta length must equal 2 * n_qubits * depth");
    if (!(model.p_deph >= 0.0 && model.p_deph <= 1.0))
        throw std::invalid_argument("p_deph must lie in [0, 1]");
}

/// Angle-encoding block: Rx(x_q) then Ry(x_q) on each qubit q.
inline std::vector<Gate> encode(const InputPoint& x, int n_qubits) {
    detail::check_n_qubits(n_qubits);
    if (x.features.size() != n_qubits)
        throw std::invalid_argument("feature count must equal n_qubits");
    std::vector<Gate> gates;
    gates.reserve(2 * static_cast<std::size_t>(n_qubits));
    for (int q = 0; q < n_qubits; ++q) {
        gates.push_back(Gate::rx(q, x.features[q]));
        gates.push_back(Gate::ry(q, x.features[q]));
    }
    return gates;
}

/// One variational layer: Ry on every qubit, Rx on every qubit, then the
/// CNOT entangling chain q -> q+1 (a single CNOT 0->1 for two qubits).
inline std::vector<Gate> variational_layer(Eigen::Ref<const Eigen::VectorXd> layer_params,
                                           int n_qubits) {
    detail::check_n_qubits(n_qubits);
    if (layer_params.size() != params_per_layer(n_qubits))
        throw std::invalid_argument("layer expects 2 * n_qubits parameters");
    std::vector<Gate> gates;
    gates.reserve(static_cast<std::size_t>(3 * n_qubits - 1));
    for (int q = 0; q < n_qubits; ++q) gates.push_back(Gate::ry(q, layer_params[q]));
    for (int q = 0; q < n_qubits; ++q) gates.push_back(Gate::rx(q, layer_params[n_qubits + q]));
    for (int q = 0; q + 1 < n_qubits; ++q) gates.push_back(Gate::cnot(q, q + 1));
    return gates;
}

/// Noise-free |<1...1|psi(x;theta)>|^2 via pure-state evolution. Ignores
/// p_deph by construction.
inline double forward_statevector(const CircuitModel& model, const InputPoint& x) {
    validate_model(model);
    auto state = zero_state<double>(model.n_qubits);
    for (const Gate& g : encode(x, model.n_qubits)) apply_gate_in_place(state, g);
    const int k = params_per_layer(model.n_qubits);
    for (int l = 0; l < model.depth; ++l)
        for (const Gate& g : variational_layer(model.theta.segment(l * k, k), model.n_qubits))
            apply_gate_in_place(state, g);
    return born_probability(state, all_ones_index(model.n_qubits));
}

/// <1...1|rho|1...1> via density-matrix evolution, dephasing each qubit at
/// rate model.p_deph after every variational layer.
inline double forward_density(const CircuitModel& model, const InputPoint& x) {
    validate_model(model);
    auto rho = to_density(zero_state<double>(model.n_qubits));
    for (const Gate& g : encode(x, model.n_qubits)) apply_gate_dm_in_place(rho, g);
    const int k = params_per_layer(model.n_qubits);
    for (int l = 0; l < model.depth; ++l) {
        for (const Gate& g : variational_layer(model.theta.segment(l * k, k), model.n_qubits))
            apply_gate_dm_in_place(rho, g);
        for (int q = 0; q < model.n_qubits; ++q) dephase_in_place(rho, q, model.p_deph);
    }
    return born_probability(rho, all_ones_index(model.n_qubits));
}

/// Exact model output: statevector path when noiseless, density-matrix
/// path otherwise. Never clipped.
inline double forward_exact(const CircuitModel& model, const InputPoint& x) {
    return model.p_deph == 0.0 ? forward_statevector(model, x) : forward_density(model, x);
}

/// Finite-shot model output: k/S with k ~ Binomial(S, forward_exact),
/// clipped to [eps, 1-eps] per the measurement stabilization rule.
inline double forward_sampled(const CircuitModel& model, const InputPoint& x,
                              std::int64_t shots, SampleStream& stream) {
    return clip_probability(sample_probability(forward_exact(model, x), shots, stream));
}

}  // namespace qnn
