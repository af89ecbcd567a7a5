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
 * Qubit state vectors, gates, circuits and prefix measurement.
 *
 * Bit convention: basis index b ranges over [0, 2^n); qubit i is tensor
 * factor i and corresponds to bit i of b, i.e. (b >> i) & 1. The "first l
 * bits" of an outcome are its l low-order bits.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "qapprox/error.hpp"
#include "qapprox/linalg.hpp"

namespace qapprox {

/// Largest qubit count for which dense 2^n × 2^n matrices are built.
inline constexpr int kDenseQubitCap = 10;
/// Largest qubit count for state-vector simulation.
inline constexpr int kStateQubitCap = 24;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kGateUnitarityTolerance = 1e-9;

inline std::size_t dimension_of(int n) { return std::size_t{1} << n; }

/// Normalized amplitude vector over n qubits. Unnormalized vectors are
/// plain ComplexVector values.
class StateVec {
  public:
    StateVec(int n, ComplexVector amps) : n_(n), amps_(std::move(amps)) {
        detail::require(n >= 1 && n <= kStateQubitCap,
                        "StateVec: qubit count out of range");
        detail::require(static_cast<std::size_t>(amps_.size()) == dimension_of(n),
                        "StateVec: amplitude count must be 2^n");
        detail::require(amps_.allFinite(), "StateVec: non-finite amplitude");
        detail::require(std::abs(amps_.squaredNorm() - 1.0) <= kNormTolerance,
                        "StateVec: state is not normalized");
    }

    static StateVec basis(int n, std::size_t index) {
        detail::require(n >= 1 && n <= kStateQubitCap,
                        "StateVec: qubit count out of range");
        detail::require(index < dimension_of(n), "StateVec: basis index out of range");
        ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dimension_of(n)));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return {n, std::move(v)};
    }
    static StateVec zero(int n) { return basis(n, 0); }

    /// Normalizes `v` first; throws if it is (numerically) zero.
    static StateVec normalized(int n, const ComplexVector &v) {
        const double len = v.norm();
        detail::require(len > 1e-300, "StateVec: cannot normalize a zero vector");
        return {n, v / len};
    }

    [[nodiscard]] int num_qubits() const { return n_; }
    [[nodiscard]] std::size_t dimension() const { return dimension_of(n_); }
    [[nodiscard]] const ComplexVector &amplitudes() const { return amps_; }
    [[nodiscard]] Complex operator[](std::size_t b) const {
        return amps_(static_cast<Eigen::Index>(b));
    }

  private:
    int n_;
    ComplexVector amps_;
};

/// A g-qubit unitary applied to `positions`; bit j of the gate's own basis
/// index is qubit positions[j].
struct LocalGate {
    std::vector<int> positions;
    ComplexMatrix matrix;
};

struct Control {
    int qubit;
    bool polarity; // fires when the qubit equals this value
    friend bool operator==(const Control &, const Control &) = default;
};

/// Single-qubit unitary on `target`, applied when every control matches.
struct ControlledGate {
    std::vector<Control> controls;
    int target;
    ComplexMatrix matrix; // 2×2
};

/// I_w: multiplies the amplitude of |0…0⟩ by e^{iw}, fixes every other
/// basis state.
struct PhaseOnZero {
    double w;
};

using Gate = std::variant<LocalGate, ControlledGate, PhaseOnZero>;

namespace detail {

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

inline void require_qubits(const std::vector<int> &qubits, int n,
                           const char *who) {
    std::uint64_t seen = 0;
    for (int q : qubits) {
        require(q >= 0 && q < n, std::string(who) + ": qubit index out of range");
        const std::uint64_t bit = std::uint64_t{1} << q;
        require((seen & bit) == 0, std::string(who) + ": duplicate qubit index");
        seen |= bit;
    }
}

} // namespace detail

/// Qubits a gate touches (empty for PhaseOnZero, which acts on all of them
/// through the all-zero pattern).
inline std::vector<int> gate_qubits(const Gate &gate) {
    return std::visit(
        detail::overloaded{
            [](const LocalGate &g) { return g.positions; },
            [](const ControlledGate &g) {
                std::vector<int> q;
                q.reserve(g.controls.size() + 1);
                for (const auto &c : g.controls) {
                    q.push_back(c.qubit);
                }
                q.push_back(g.target);
                return q;
            },
            [](const PhaseOnZero &) { return std::vector<int>{}; }},
        gate);
}

/// Throws DomainError if the gate is malformed for an n-qubit register.
inline void validate_gate(const Gate &gate, int n) {
    std::visit(
        detail::overloaded{
            [n](const LocalGate &g) {
                detail::require(!g.positions.empty(), "LocalGate: no positions");
                detail::require_qubits(g.positions, n, "LocalGate");
                const auto dim = static_cast<Eigen::Index>(dimension_of(
                    static_cast<int>(g.positions.size())));
                detail::require(g.matrix.rows() == dim && g.matrix.cols() == dim,
                                "LocalGate: matrix must be 2^g × 2^g");
                detail::require(is_unitary(g.matrix, kGateUnitarityTolerance),
                                "LocalGate: matrix is not unitary");
            },
            [n](const ControlledGate &g) {
                detail::require_qubits(gate_qubits(g), n, "ControlledGate");
                detail::require(g.matrix.rows() == 2 && g.matrix.cols() == 2,
                                "ControlledGate: matrix must be 2×2");
                detail::require(is_unitary(g.matrix, kGateUnitarityTolerance),
                                "ControlledGate: matrix is not unitary");
            },
            [](const PhaseOnZero &g) {
                detail::require(std::isfinite(g.w), "PhaseOnZero: non-finite angle");
            }},
        gate);
}

inline Gate gate_dagger(const Gate &gate) {
    return std::visit(
        detail::overloaded{
            [](const LocalGate &g) -> Gate {
                return LocalGate{g.positions, g.matrix.adjoint()};
            },
            [](const ControlledGate &g) -> Gate {
                return ControlledGate{g.controls, g.target, g.matrix.adjoint()};
            },
            [](const PhaseOnZero &g) -> Gate { return PhaseOnZero{-g.w}; }},
        gate);
}

/// Accounting convention mapping a gate (in an n-qubit circuit) to a
/// two-qubit-gate-equivalent cost. Not a verified gate count.
using CostModel = std::function<double(const Gate &, int n)>;

/// Local g ≤ 2: 1, Local g > 2: 2^g; Controlled with c controls: max(1, c);
/// PhaseOnZero: n².
inline double default_gate_cost(const Gate &gate, int n) {
    return std::visit(
        detail::overloaded{
            [](const LocalGate &g) {
                const auto arity = static_cast<int>(g.positions.size());
                return arity <= 2 ? 1.0 : std::ldexp(1.0, arity);
            },
            [](const ControlledGate &g) {
                return std::max(1.0, static_cast<double>(g.controls.size()));
            },
            [n](const PhaseOnZero &) { return static_cast<double>(n) * n; }},
        gate);
}

struct CircuitCost {
    std::size_t primitive_count = 0;
    double two_qubit_equiv = 0.0;
};

/// Ordered gate list on n qubits; gates apply to states left to right.
class Circuit {
  public:
    explicit Circuit(int n) : n_(n) {
        detail::require(n >= 1 && n <= kStateQubitCap,
                        "Circuit: qubit count out of range");
    }
    Circuit(int n, std::vector<Gate> gates) : Circuit(n) {
        for (auto &g : gates) {
            append(std::move(g));
        }
    }

    Circuit &append(Gate gate) {
        validate_gate(gate, n_);
        gates_.push_back(std::move(gate));
        return *this;
    }
    /// Appends every gate of `other`, which must be on the same register.
    Circuit &append(const Circuit &other) {
        detail::require(other.n_ == n_, "Circuit: register size mismatch");
        gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
        return *this;
    }

    [[nodiscard]] int num_qubits() const { return n_; }
    [[nodiscard]] const std::vector<Gate> &gates() const { return gates_; }
    [[nodiscard]] std::size_t size() const { return gates_.size(); }
    [[nodiscard]] bool empty() const { return gates_.empty(); }

    [[nodiscard]] CircuitCost cost(const CostModel &model = default_gate_cost) const {
        CircuitCost c;
        c.primitive_count = gates_.size();
        for (const auto &g : gates_) {
            c.two_qubit_equiv += model(g, n_);
        }
        return c;
    }

    template <class T> [[nodiscard]] std::size_t count() const {
        std::size_t k = 0;
        for (const auto &g : gates_) {
            k += std::holds_alternative<T>(g) ? 1 : 0;
        }
        return k;
    }

  private:
    int n_;
    std::vector<Gate> gates_;
};

namespace detail {

inline void apply_local(const LocalGate &g, ComplexVector &v) {
    const std::size_t sub = dimension_of(static_cast<int>(g.positions.size()));
    std::vector<std::size_t> offset(sub, 0);
    std::size_t mask = 0;
    for (std::size_t s = 0; s < sub; ++s) {
        for (std::size_t j = 0; j < g.positions.size(); ++j) {
            if ((s >> j) & 1U) {
                offset[s] |= std::size_t{1} << g.positions[j];
            }
        }
    }
    for (int p : g.positions) {
        mask |= std::size_t{1} << p;
    }
    const auto dim = static_cast<std::size_t>(v.size());
    ComplexVector in(static_cast<Eigen::Index>(sub));
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & mask) {
            continue;
        }
        for (std::size_t s = 0; s < sub; ++s) {
            in(static_cast<Eigen::Index>(s)) = v(static_cast<Eigen::Index>(base | offset[s]));
        }
        const ComplexVector out = g.matrix * in;
        for (std::size_t s = 0; s < sub; ++s) {
            v(static_cast<Eigen::Index>(base | offset[s])) = out(static_cast<Eigen::Index>(s));
        }
    }
}

inline void apply_controlled(const ControlledGate &g, ComplexVector &v) {
    std::size_t cmask = 0;
    std::size_t cvalue = 0;
    for (const auto &c : g.controls) {
        cmask |= std::size_t{1} << c.qubit;
        if (c.polarity) {
            cvalue |= std::size_t{1} << c.qubit;
        }
    }
    const std::size_t tbit = std::size_t{1} << g.target;
    const Complex m00 = g.matrix(0, 0), m01 = g.matrix(0, 1);
    const Complex m10 = g.matrix(1, 0), m11 = g.matrix(1, 1);
    const auto dim = static_cast<std::size_t>(v.size());
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & tbit) || (i & cmask) != cvalue) {
            continue;
        }
        const auto i0 = static_cast<Eigen::Index>(i);
        const auto i1 = static_cast<Eigen::Index>(i | tbit);
        const Complex a = v(i0), b = v(i1);
        v(i0) = m00 * a + m01 * b;
        v(i1) = m10 * a + m11 * b;
    }
}

} // namespace detail

/// Applies one gate in place to a raw 2^n vector.
inline void apply_gate(const Gate &gate, ComplexVector &v) {
    std::visit(detail::overloaded{
                   [&v](const LocalGate &g) { detail::apply_local(g, v); },
                   [&v](const ControlledGate &g) { detail::apply_controlled(g, v); },
                   [&v](const PhaseOnZero &g) { v(0) *= std::polar(1.0, g.w); }},
               gate);
}

/// Applies a circuit to an arbitrary (not necessarily normalized) vector.
inline ComplexVector apply_circuit(const Circuit &circuit, ComplexVector v) {
    detail::require(static_cast<std::size_t>(v.size()) ==
                        dimension_of(circuit.num_qubits()),
                    "apply_circuit: dimension mismatch");
    for (const auto &g : circuit.gates()) {
        apply_gate(g, v);
    }
    return v;
}

inline StateVec apply_circuit(const Circuit &circuit, const StateVec &state) {
    detail::require(circuit.num_qubits() == state.num_qubits(),
                    "apply_circuit: dimension mismatch");
    return {state.num_qubits(), apply_circuit(circuit, state.amplitudes())};
}

/// Full-space matrix of a single gate.
inline ComplexMatrix embed_gate(const Gate &gate, int n) {
    detail::require(n >= 1 && n <= kDenseQubitCap, "embed_gate: qubit count exceeds dense cap");
    validate_gate(gate, n);
    const auto dim = static_cast<Eigen::Index>(dimension_of(n));
    ComplexMatrix m(dim, dim);
    ComplexVector col(dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        col.setZero();
        col(c) = 1.0;
        apply_gate(gate, col);
        m.col(c) = col;
    }
    return m;
}

/// Dense unitary of a whole circuit; limited to n ≤ cap.
inline ComplexMatrix circuit_to_matrix(const Circuit &circuit,
                                       int cap = kDenseQubitCap) {
    const int n = circuit.num_qubits();
    detail::require(n <= cap && n <= kDenseQubitCap,
                    "circuit_to_matrix: qubit count exceeds dense cap");
    const auto dim = static_cast<Eigen::Index>(dimension_of(n));
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
    for (const auto &g : circuit.gates()) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            ComplexVector col = m.col(c);
            apply_gate(g, col);
            m.col(c) = col;
        }
    }
    return m;
}

inline Circuit circuit_dagger(const Circuit &circuit) {
    Circuit out(circuit.num_qubits());
    const auto &gates = circuit.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        out.append(gate_dagger(*it));
    }
    return out;
}

/// Probability distribution over 2^l outcomes.
class Distribution {
  public:
    Distribution(int l, std::vector<double> probs) : l_(l), probs_(std::move(probs)) {
        detail::require(l >= 0 && probs_.size() == dimension_of(l),
                        "Distribution: need 2^l probabilities");
        double total = 0.0;
        for (double &p : probs_) {
            detail::require(std::isfinite(p) && p >= -1e-12,
                            "Distribution: negative probability");
            p = std::max(p, 0.0);
            total += p;
        }
        detail::require(std::abs(total - 1.0) <= 1e-9,
                        "Distribution: probabilities do not sum to 1");
    }

    [[nodiscard]] int bits() const { return l_; }
    [[nodiscard]] const std::vector<double> &probs() const { return probs_; }
    [[nodiscard]] double operator[](std::size_t b) const { return probs_[b]; }
    [[nodiscard]] std::size_t size() const { return probs_.size(); }

  private:
    int l_;
    std::vector<double> probs_;
};

/// Prob(b) = Σ over basis indices whose low l bits equal b of |amp|².
inline Distribution measure_prefix(const StateVec &state, int l) {
    detail::require(l >= 1 && l <= state.num_qubits(),
                    "measure_prefix: l must be in [1, n]");
    const std::size_t mask = dimension_of(l) - 1;
    std::vector<double> probs(dimension_of(l), 0.0);
    const auto &a = state.amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        probs[static_cast<std::size_t>(i) & mask] += std::norm(a(i));
    }
    return {l, std::move(probs)};
}

} // namespace qapprox
