// Copyright 2026 The qapprox Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exact circuit synthesis.
 *
 *  - prepare_state: |0…0⟩ ↦ |u⟩ by recursive amplitude splitting, one
 *    multi-controlled SU(2) gate per nonzero prefix block.
 *  - extend_to_unitary: completes k orthonormal rows to a unitary with at
 *    least m − k eigenvalues equal to 1.
 *  - synthesize_transitive: |i⟩ ↦ |u_i⟩ for i < k as a product of
 *    conjugated I_w phase gates, one per non-unit eigenvalue of the
 *    extended unitary.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "qapprox/error.hpp"
#include "qapprox/linalg.hpp"
#include "qapprox/tensor_core.hpp"

namespace qapprox {

/// k mutually orthonormal states on n qubits.
class OrthoSeq {
  public:
    OrthoSeq(int n, std::vector<StateVec> states) : n_(n), states_(std::move(states)) {
        detail::require(!states_.empty(), "OrthoSeq: need at least one state");
        detail::require(states_.size() <= dimension_of(n),
                        "OrthoSeq: more states than dimensions");
        for (std::size_t i = 0; i < states_.size(); ++i) {
            detail::require(states_[i].num_qubits() == n,
                            "OrthoSeq: state has wrong qubit count");
            for (std::size_t j = 0; j < i; ++j) {
                const Complex ip =
                    states_[j].amplitudes().dot(states_[i].amplitudes());
                detail::require(std::abs(ip) <= 1e-8, "OrthoSeq: states are not orthogonal");
            }
        }
    }

    /// Columns of `m` as an orthonormal sequence.
    static OrthoSeq from_columns(int n, const ComplexMatrix &m) {
        std::vector<StateVec> s;
        s.reserve(static_cast<std::size_t>(m.cols()));
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            s.emplace_back(n, m.col(j));
        }
        return {n, std::move(s)};
    }

    [[nodiscard]] int num_qubits() const { return n_; }
    [[nodiscard]] std::size_t size() const { return states_.size(); }
    [[nodiscard]] const StateVec &operator[](std::size_t i) const { return states_[i]; }
    [[nodiscard]] const std::vector<StateVec> &states() const { return states_; }

    /// 2^n × k matrix whose columns are the states.
    [[nodiscard]] ComplexMatrix as_columns() const {
        ComplexMatrix m(static_cast<Eigen::Index>(dimension_of(n_)),
                        static_cast<Eigen::Index>(states_.size()));
        for (std::size_t j = 0; j < states_.size(); ++j) {
            m.col(static_cast<Eigen::Index>(j)) = states_[j].amplitudes();
        }
        return m;
    }

  private:
    int n_;
    std::vector<StateVec> states_;
};

struct SynthesisReport {
    Circuit circuit;
    std::size_t primitive_count = 0;
    double two_qubit_equiv = 0.0;
    double residual = 0.0; // achieved max column error on the prepared inputs
};

inline constexpr double kZeroBlockThreshold = 1e-12;
inline constexpr double kUnitEigenvalueThreshold = 1e-7;

namespace detail {

/// SU(2) matrix whose first column is (a0, a1), |a0|² + |a1|² = 1.
inline ComplexMatrix su2_with_first_column(Complex a0, Complex a1) {
    ComplexMatrix m(2, 2);
    m << a0, -std::conj(a1), a1, std::conj(a0);
    return m;
}

inline bool is_identity2(const ComplexMatrix &m) {
    return (m - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-15;
}

// Appends gates mapping |0…0⟩ on qubits [0, m) to Σ_b amps[b] |b⟩.
inline void prepare_into(Circuit &circuit, const ComplexVector &amps, int m) {
    if (m == 1) {
        ComplexMatrix g = su2_with_first_column(amps(0), amps(1));
        if (!is_identity2(g)) {
            circuit.append(LocalGate{{0}, std::move(g)});
        }
        return;
    }
    const auto half = static_cast<Eigen::Index>(dimension_of(m - 1));
    ComplexVector magnitude(half);
    for (Eigen::Index b = 0; b < half; ++b) {
        magnitude(b) = std::sqrt(std::norm(amps(b)) + std::norm(amps(b + half)));
    }
    prepare_into(circuit, magnitude, m - 1);

    for (Eigen::Index b = 0; b < half; ++b) {
        const double a = magnitude(b).real();
        if (a < kZeroBlockThreshold) {
            continue;
        }
        Complex a0 = amps(b) / a;
        Complex a1 = amps(b + half) / a;
        const double len = std::sqrt(std::norm(a0) + std::norm(a1));
        a0 /= len;
        a1 /= len;
        ComplexMatrix g = su2_with_first_column(a0, a1);
        if (is_identity2(g)) {
            continue;
        }
        std::vector<Control> controls;
        controls.reserve(static_cast<std::size_t>(m - 1));
        for (int q = 0; q < m - 1; ++q) {
            controls.push_back({q, ((b >> q) & 1) != 0});
        }
        circuit.append(ControlledGate{std::move(controls), m - 1, std::move(g)});
    }
}

inline SynthesisReport make_report(Circuit circuit, double residual,
                                   const CostModel &cost) {
    const auto c = circuit.cost(cost);
    return {std::move(circuit), c.primitive_count, c.two_qubit_equiv, residual};
}

} // namespace detail

/// Circuit mapping |0…0⟩ to exactly `u` (phase included).
inline SynthesisReport prepare_state(const StateVec &u,
                                     const CostModel &cost = default_gate_cost) {
    const int n = u.num_qubits();
    Circuit circuit(n);
    detail::prepare_into(circuit, u.amplitudes(), n);
    const ComplexVector out = apply_circuit(circuit, StateVec::zero(n).amplitudes());
    const double residual = (out - u.amplitudes()).norm();
    return detail::make_report(std::move(circuit), residual, cost);
}

/**
 * Completes a k×m matrix with orthonormal rows to an m×m unitary whose
 * first k rows are `v` and which fixes every vector x with Vx equal to the
 * first k entries of x. That fixed space has dimension at least m − k.
 */
inline ComplexMatrix extend_to_unitary(const ComplexMatrix &v) {
    const Eigen::Index k = v.rows();
    const Eigen::Index m = v.cols();
    detail::require(k >= 1 && k <= m, "extend_to_unitary: need 1 <= k <= m");
    detail::require((v * v.adjoint() - ComplexMatrix::Identity(k, k)).norm() <= 1e-8,
                    "extend_to_unitary: rows are not orthonormal");
    if (k == m) {
        return v;
    }

    // Rows of W: orthonormal basis of the complement of V's row space.
    const ComplexMatrix w = null_space(v, m - k).adjoint();

    ComplexMatrix shifted = v;
    shifted.leftCols(k) -= ComplexMatrix::Identity(k, k);
    const ComplexMatrix fixed = null_space(shifted, m - k);

    const ComplexMatrix u =
        unitary_from_congruence(w * fixed, fixed.bottomRows(m - k));

    ComplexMatrix out(m, m);
    out.topRows(k) = v;
    out.bottomRows(m - k) = u * w;
    if (!is_unitary(out, 1e-8)) {
        throw NumericalError("extend_to_unitary: completion lost unitarity");
    }
    return out;
}

/// Unitary (2^n × 2^n) with U|i⟩ = |u_i⟩ for i < k and at most k eigenvalues
/// different from 1. The row extension is applied to the transpose, which has the
/// same eigenvalues.
inline ComplexMatrix extend_targets(const OrthoSeq &targets) {
    return extend_to_unitary(targets.as_columns().transpose()).transpose();
}

/**
 * Circuit with U|i⟩ = |u_i⟩ for every i < k.
 *
 * The extended unitary is V diag(e^{iw_j}) V*; each eigenvalue away from 1
 * contributes P_j I_{w_j} P_j† with P_j preparing eigenvector j. Factors are
 * emitted in eigenvalue-index order.
 */
inline SynthesisReport synthesize_transitive(const OrthoSeq &targets,
                                             const CostModel &cost = default_gate_cost) {
    const int n = targets.num_qubits();
    const ComplexMatrix full = extend_targets(targets);
    const UnitaryEigen eig = eig_unitary(full);

    std::vector<Eigen::Index> active;
    for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
        if (std::abs(eig.values(j) - 1.0) > kUnitEigenvalueThreshold) {
            active.push_back(j);
        }
    }

    auto factor = [&](Eigen::Index j) {
        const Circuit prep = prepare_state(StateVec::normalized(n, eig.vectors.col(j))).circuit;
        Circuit f = circuit_dagger(prep);
        f.append(PhaseOnZero{std::arg(eig.values(j))});
        f.append(prep);
        return f;
    };

    Circuit circuit(n);
    if (n >= 6 && active.size() >= 4) {
        std::vector<std::future<Circuit>> parts;
        parts.reserve(active.size());
        for (Eigen::Index j : active) {
            parts.push_back(std::async(std::launch::async, factor, j));
        }
        for (auto &p : parts) {
            circuit.append(p.get());
        }
    } else {
        for (Eigen::Index j : active) {
            circuit.append(factor(j));
        }
    }

    double residual = 0.0;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const ComplexVector out =
            apply_circuit(circuit, StateVec::basis(n, i).amplitudes());
        residual = std::max(residual, (out - targets[i].amplitudes()).norm());
    }
    return detail::make_report(std::move(circuit), residual, cost);
}

/// k(2·b1 + bI): gate count of the transitive construction given per-state
/// preparation cost b1 and phase-gate cost bI.
inline std::uint64_t gate_budget(std::uint64_t k, std::uint64_t b1, std::uint64_t bI) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    detail::require(b1 <= (kMax - bI) / 2, "gate_budget: overflow");
    const std::uint64_t per = 2 * b1 + bI;
    detail::require(per == 0 || k <= kMax / per, "gate_budget: overflow");
    return k * per;
}

} // namespace qapprox
