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

/// Minimal dense n-qubit simulator: statevector and density-matrix carriers,
/// the gate set {Rx, Ry, CNOT, Z}, a per-qubit dephasing channel, and
/// Born-rule probability extraction.
///
/// Basis-index convention: qubit 0 is the MOST significant bit of the basis
/// index, so for two qubits |q0 q1> = |10> has index 2. Every operation in
/// this header (and the CNOT truth table in particular) follows it.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <utility>

namespace qnn {

/// Pure-state carrier: 2^n complex amplitudes.
template <typename Scalar = double>
struct StateVector {
    using ComplexT = std::complex<Scalar>;
    using VectorT = Eigen::Matrix<ComplexT, Eigen::Dynamic, 1>;

    int n_qubits = 0;
    VectorT amplitudes;
};

/// Mixed-state carrier: 2^n x 2^n complex Hermitian matrix with unit trace.
template <typename Scalar = double>
struct DensityMatrix {
    using ComplexT = std::complex<Scalar>;
    using MatrixT = Eigen::Matrix<ComplexT, Eigen::Dynamic, Eigen::Dynamic>;

    int n_qubits = 0;
    MatrixT elements;
};

using StateVectorXd = StateVector<double>;
using DensityMatrixXd = DensityMatrix<double>;

/// One gate instance. Angles are in radians and use the half-angle
/// convention, so the generator of Rx/Ry has eigenvalues +-1/2 and the
/// +-pi/2 parameter-shift rule is exact.
struct Gate {
    enum class Kind { Rx, Ry, Cnot, Z };

    Kind kind = Kind::Rx;
    int target = 0;
    std::optional<int> control;  // CNOT only
    double angle = 0.0;          // Rx/Ry only

    static Gate rx(int target, double angle) { return Gate{Kind::Rx, target, std::nullopt, angle}; }
    static Gate ry(int target, double angle) { return Gate{Kind::Ry, target, std::nullopt, angle}; }
    static Gate z(int target) { return Gate{Kind::Z, target, std::nullopt, 0.0}; }
    static Gate cnot(int control, int target) {
        if (control == target) throw std::invalid_argument("cnot: control equals target");
        return Gate{Kind::Cnot, target, control, 0.0};
    }
};

namespace detail {

inline void check_n_qubits(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 30)
        throw std::invalid_argument("n_qubits must be in [1, 30]");
}

inline void check_qubit_index(int n_qubits, int qubit) {
    if (qubit < 0 || qubit >= n_qubits)
        throw std::out_of_range("qubit index out of range");
}

inline void check_gate(int n_qubits, const Gate& gate) {
    check_qubit_index(n_qubits, gate.target);
    if (gate.control) {
        check_qubit_index(n_qubits, *gate.control);
        if (*gate.control == gate.target)
            throw std::invalid_argument("gate control equals target");
    }
}

/// Index-bit mask of `qubit` under the MSB-first convention.
inline Eigen::Index qubit_mask(int n_qubits, int qubit) {
    return Eigen::Index{1} << (n_qubits - 1 - qubit);
}

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> rotation_matrix(const Gate& gate) {
    using C = std::complex<Scalar>;
    const Scalar half = static_cast<Scalar>(gate.angle) / Scalar{2};
    const Scalar c = std::cos(half);
    const Scalar s = std::sin(half);
    Eigen::Matrix<C, 2, 2> u;
    if (gate.kind == Gate::Kind::Rx) {
        u << C{c, 0}, C{0, -s},
             C{0, -s}, C{c, 0};
    } else {
        u << C{c, 0}, C{-s, 0},
             C{s, 0}, C{c, 0};
    }
    return u;
}

}  // namespace detail

/// |0...0> on n qubits.
template <typename Scalar = double>
StateVector<Scalar> zero_state(int n_qubits) {
    detail::check_n_qubits(n_qubits);
    StateVector<Scalar> state;
    state.n_qubits = n_qubits;
    state.amplitudes = StateVector<Scalar>::VectorT::Zero(Eigen::Index{1} << n_qubits);
    state.amplitudes[0] = Scalar{1};
    return state;
}

/// Outer product |psi><psi|.
template <typename Scalar>
DensityMatrix<Scalar> to_density(const StateVector<Scalar>& state) {
    DensityMatrix<Scalar> rho;
    rho.n_qubits = state.n_qubits;
    rho.elements = state.amplitudes * state.amplitudes.adjoint();
    return rho;
}

/// Dense 2^n x 2^n unitary of a gate (used by the density-matrix path and
/// handy as a test oracle for the pairwise statevector kernels).
template <typename Scalar = double>
typename DensityMatrix<Scalar>::MatrixT gate_matrix(const Gate& gate, int n_qubits) {
    detail::check_n_qubits(n_qubits);
    detail::check_gate(n_qubits, gate);
    using MatrixT = typename DensityMatrix<Scalar>::MatrixT;
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    MatrixT u = MatrixT::Zero(dim, dim);
    switch (gate.kind) {
        case Gate::Kind::Z: {
            const Eigen::Index mask = detail::qubit_mask(n_qubits, gate.target);
            for (Eigen::Index i = 0; i < dim; ++i)
                u(i, i) = (i & mask) ? Scalar{-1} : Scalar{1};
            break;
        }
        case Gate::Kind::Cnot: {
            const Eigen::Index cmask = detail::qubit_mask(n_qubits, *gate.control);
            const Eigen::Index tmask = detail::qubit_mask(n_qubits, gate.target);
            for (Eigen::Index i = 0; i < dim; ++i) {
                const Eigen::Index j = (i & cmask) ? (i ^ tmask) : i;
                u(j, i) = Scalar{1};
            }
            break;
        }
        default: {
            const auto r = detail::rotation_matrix<Scalar>(gate);
            const Eigen::Index mask = detail::qubit_mask(n_qubits, gate.target);
            for (Eigen::Index i = 0; i < dim; ++i) {
                const Eigen::Index lo = i & ~mask;
                const int row = (i & mask) ? 1 : 0;
                u(i, lo) = r(row, 0);
                u(i, lo | mask) = r(row, 1);
            }
            break;
        }
    }
    return u;
}

/// Applies a gate to an exclusively held statevector.
template <typename Scalar>
void apply_gate_in_place(StateVector<Scalar>& state, const Gate& gate) {
    detail::check_gate(state.n_qubits, gate);
    auto& amps = state.amplitudes;
    const Eigen::Index dim = amps.size();
    const Eigen::Index mask = detail::qubit_mask(state.n_qubits, gate.target);
    switch (gate.kind) {
        case Gate::Kind::Z: {
            for (Eigen::Index i = 0; i < dim; ++i)
                if (i & mask) amps[i] = -amps[i];
            break;
        }
        case Gate::Kind::Cnot: {
            const Eigen::Index cmask = detail::qubit_mask(state.n_qubits, *gate.control);
            for (Eigen::Index i = 0; i < dim; ++i)
                if ((i & cmask) && !(i & mask)) std::swap(amps[i], amps[i | mask]);
            break;
        }
        default: {
            const auto u = detail::rotation_matrix<Scalar>(gate);
            for (Eigen::Index i = 0; i < dim; ++i) {
                if (i & mask) continue;
                const auto a0 = amps[i];
                const auto a1 = amps[i | mask];
                amps[i] = u(0, 0) * a0 + u(0, 1) * a1;
                amps[i | mask] = u(1, 0) * a0 + u(1, 1) * a1;
            }
            break;
        }
    }
}

template <typename Scalar>
StateVector<Scalar> apply_gate(const StateVector<Scalar>& state, const Gate& gate) {
    StateVector<Scalar> out = state;
    apply_gate_in_place(out, gate);
    return out;
}

/// rho <- U rho U^dagger.
template <typename Scalar>
void apply_gate_dm_in_place(DensityMatrix<Scalar>& rho, const Gate& gate) {
    const auto u = gate_matrix<Scalar>(gate, rho.n_qubits);
    rho.elements = u * rho.elements * u.adjoint();
}

template <typename Scalar>
DensityMatrix<Scalar> apply_gate_dm(const DensityMatrix<Scalar>& rho, const Gate& gate) {
    DensityMatrix<Scalar> out = rho;
    apply_gate_dm_in_place(out, gate);
    return out;
}

/// Single-qubit dephasing channel rho <- (1-p) rho + p Z rho Z^dagger.
/// Scales the qubit's coherence blocks by (1 - 2p); populations are fixed
/// points for every p.
template <typename Scalar>
void dephase_in_place(DensityMatrix<Scalar>& rho, int qubit, double p_deph) {
    detail::check_qubit_index(rho.n_qubits, qubit);
    if (!(p_deph >= 0.0 && p_deph <= 1.0))
        throw std::invalid_argument("p_deph must lie in [0, 1]");
    const Scalar factor = Scalar{1} - Scalar{2} * static_cast<Scalar>(p_deph);
    const Eigen::Index mask = detail::qubit_mask(rho.n_qubits, qubit);
    const Eigen::Index dim = rho.elements.rows();
    for (Eigen::Index col = 0; col < dim; ++col)
        for (Eigen::Index row = 0; row < dim; ++row)
            if ((row ^ col) & mask) rho.elements(row, col) *= factor;
}

template <typename Scalar>
DensityMatrix<Scalar> dephase(const DensityMatrix<Scalar>& rho, int qubit, double p_deph) {
    DensityMatrix<Scalar> out = rho;
    dephase_in_place(out, qubit, p_deph);
    return out;
}

/// Born probability of one computational-basis outcome.
template <typename Scalar>
Scalar born_probability(const StateVector<Scalar>& state, Eigen::Index basis_index) {
    if (basis_index < 0 || basis_index >= state.amplitudes.size())
        throw std::out_of_range("basis_index out of range");
    return std::norm(state.amplitudes[basis_index]);
}

template <typename Scalar>
Scalar born_probability(const DensityMatrix<Scalar>& rho, Eigen::Index basis_index) {
    if (basis_index < 0 || basis_index >= rho.elements.rows())
        throw std::out_of_range("basis_index out of range");
    return rho.elements(basis_index, basis_index).real();
}

/// Index of |1...1>, the projector outcome measured by the QNN output.
inline Eigen::Index all_ones_index(int n_qubits) {
    detail::check_n_qubits(n_qubits);
    return (Eigen::Index{1} << n_qubits) - 1;
}

}  // namespace qnn
