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
 * Distances on states and operators: Frobenius norm, two-norm, weak
 * two-norm over the first k basis inputs, and total variation distances of
 * prefix-measurement distributions.
 *
 * tv_states is only a seminorm: it ignores phases and how amplitude is
 * spread within a prefix block.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <variant>

#include "qapprox/linalg.hpp"
#include "qapprox/tensor_core.hpp"

namespace qapprox {

inline double frobenius_norm(const ComplexMatrix &a) { return a.norm(); }

/// Largest singular value.
inline double two_norm(const ComplexMatrix &a) {
    if (a.size() == 0) {
        return 0.0;
    }
    return svd(a).singular_values(0);
}

/// max_{b<k} |A|b⟩|, the largest norm among the first k columns.
inline double weak_two_norm(const ComplexMatrix &a, Eigen::Index k) {
    detail::require(k >= 1 && k <= a.cols(), "weak_two_norm: k out of range");
    return a.leftCols(k).colwise().norm().maxCoeff();
}

/// L1 distance between the l-bit prefix distributions; lies in [0, 2].
inline double tv_states(const StateVec &u, const StateVec &v, int l) {
    detail::require(u.num_qubits() == v.num_qubits(),
                    "tv_states: dimension mismatch");
    const auto pu = measure_prefix(u, l);
    const auto pv = measure_prefix(v, l);
    double d = 0.0;
    for (std::size_t b = 0; b < pu.size(); ++b) {
        d += std::abs(pu[b] - pv[b]);
    }
    return d;
}

/// max_{b<k} tv_states(U|b⟩, V|b⟩, l).
inline double tv_operators(const ComplexMatrix &u, const ComplexMatrix &v,
                           int l, Eigen::Index k) {
    detail::require(u.rows() == v.rows() && u.cols() == v.cols() &&
                        u.rows() == u.cols(),
                    "tv_operators: dimension mismatch");
    const auto dim = static_cast<std::size_t>(u.rows());
    detail::require(dim >= 2 && (dim & (dim - 1)) == 0,
                    "tv_operators: dimension must be a power of two");
    detail::require(k >= 1 && k <= u.cols(), "tv_operators: k out of range");
    const int n = std::countr_zero(dim);
    double worst = 0.0;
    for (Eigen::Index b = 0; b < k; ++b) {
        worst = std::max(worst, tv_states(StateVec::normalized(n, u.col(b)),
                                          StateVec::normalized(n, v.col(b)), l));
    }
    return worst;
}

struct Frobenius {};
struct TwoNorm {};
struct WeakTwoNorm {
    Eigen::Index k;
};
struct TvStates {
    int l;
};
struct TvOperators {
    int l;
    Eigen::Index k;
};

/// Selector over the supported distance measures.
using MetricKind = std::variant<Frobenius, TwoNorm, WeakTwoNorm, TvStates, TvOperators>;

inline std::string metric_name(const MetricKind &kind) {
    return std::visit(
        detail::overloaded{
            [](Frobenius) { return std::string("frobenius"); },
            [](TwoNorm) { return std::string("two_norm"); },
            [](WeakTwoNorm m) { return "weak_two_norm(k=" + std::to_string(m.k) + ")"; },
            [](TvStates m) { return "tv_states(l=" + std::to_string(m.l) + ")"; },
            [](TvOperators m) {
                return "tv_operators(l=" + std::to_string(m.l) +
                       ",k=" + std::to_string(m.k) + ")";
            }},
        kind);
}

/// Distance between two square operators under `kind`. Norm-based kinds use
/// the difference A − B; TvStates compares the first columns.
inline double operator_distance(const MetricKind &kind, const ComplexMatrix &a,
                                const ComplexMatrix &b) {
    detail::require(a.rows() == b.rows() && a.cols() == b.cols(),
                    "distance: dimension mismatch");
    return std::visit(
        detail::overloaded{
            [&](Frobenius) { return frobenius_norm(a - b); },
            [&](TwoNorm) { return two_norm(a - b); },
            [&](WeakTwoNorm m) { return weak_two_norm(a - b, m.k); },
            [&](TvStates m) { return tv_operators(a, b, m.l, 1); },
            [&](TvOperators m) { return tv_operators(a, b, m.l, m.k); }},
        kind);
}

/// Distance between two states under `kind`. The norm kinds all reduce to
/// the Euclidean distance |u − v| on vectors.
inline double state_distance(const MetricKind &kind, const StateVec &u,
                             const StateVec &v) {
    detail::require(u.num_qubits() == v.num_qubits(), "distance: dimension mismatch");
    return std::visit(
        detail::overloaded{
            [&](TvStates m) { return tv_states(u, v, m.l); },
            [&](TvOperators m) {
                detail::require(m.k == 1, "distance: states only support k = 1");
                return tv_states(u, v, m.l);
            },
            [&](const auto &) { return (u.amplitudes() - v.amplitudes()).norm(); }},
        kind);
}

} // namespace qapprox
