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
 * Decision and guessing problems on explicit finite domains, and the exact
 * advantage a circuit achieves on them.
 *
 * Inputs are |b, 0…0⟩: the problem's n bits sit on the low-order qubits and
 * any extra qubits start in |0⟩. Probabilities come from simulated
 * amplitudes, never from sampled shots.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "qapprox/error.hpp"
#include "qapprox/tensor_core.hpp"

namespace qapprox {

namespace detail {

inline void check_table(int n, const std::vector<std::pair<std::uint64_t, std::uint64_t>> &table,
                        std::uint64_t value_limit, const char *who) {
    require(n >= 1 && n <= kStateQubitCap, std::string(who) + ": n out of range");
    require(!table.empty(), std::string(who) + ": domain must be nonempty");
    std::set<std::uint64_t> seen;
    for (const auto &[b, fb] : table) {
        require(b < dimension_of(n), std::string(who) + ": input outside 2^n");
        require(fb < value_limit, std::string(who) + ": value out of range");
        require(seen.insert(b).second, std::string(who) + ": repeated input");
    }
}

} // namespace detail

/// f : D ⊆ {0,1}^n → {0, 1}, stored as (b, f(b)) pairs.
struct DecisionProblem {
    int n;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> table;

    DecisionProblem(int n_, std::vector<std::pair<std::uint64_t, std::uint64_t>> t)
        : n(n_), table(std::move(t)) {
        detail::check_table(n, table, 2, "DecisionProblem");
    }
};

/// f : D ⊆ {0,1}^n → {0,1}^n, stored as (b, f(b)) pairs.
struct GuessProblem {
    int n;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> table;

    GuessProblem(int n_, std::vector<std::pair<std::uint64_t, std::uint64_t>> t)
        : n(n_), table(std::move(t)) {
        detail::check_table(n, table, dimension_of(n), "GuessProblem");
    }
};

struct Advantage {
    double p_star = 0.0;     // worst-case success probability over D
    std::optional<double> q; // empty when there is no advantage
};

inline constexpr double kAdvantageSlack = 1e-12;

/// Worst-case probability that measuring qubit 0 of U|b, 0⟩ gives f(b);
/// q = 1/(2p* − 1) when p* > 1/2.
inline Advantage decision_advantage(const Circuit &circuit, const DecisionProblem &problem) {
    detail::require(circuit.num_qubits() >= problem.n, "decision_advantage: circuit too narrow");
    const int width = circuit.num_qubits();
    double worst = 1.0;
    for (const auto &[b, fb] : problem.table) {
        const StateVec out = apply_circuit(circuit, StateVec::basis(width, b));
        worst = std::min(worst, measure_prefix(out, 1)[fb]);
    }
    Advantage a{worst, std::nullopt};
    if (worst > 0.5 + kAdvantageSlack) {
        a.q = 1.0 / (2.0 * worst - 1.0);
    }
    return a;
}

/// Worst-case squared amplitude of U|b, 0⟩ on the block whose first n bits
/// equal f(b); q = 1/p* when p* > 0.
inline Advantage guess_advantage(const Circuit &circuit, const GuessProblem &problem) {
    detail::require(circuit.num_qubits() >= problem.n, "guess_advantage: circuit too narrow");
    const int width = circuit.num_qubits();
    double worst = 1.0;
    for (const auto &[b, fb] : problem.table) {
        const StateVec out = apply_circuit(circuit, StateVec::basis(width, b));
        worst = std::min(worst, measure_prefix(out, problem.n)[fb]);
    }
    Advantage a{worst, std::nullopt};
    if (worst > kAdvantageSlack) {
        a.q = 1.0 / worst;
    }
    return a;
}

enum class AmplifyMode {
    decision,           // majority vote over r runs
    guess_with_checker, // r runs, each result verified by a checking oracle
};

/**
 * Repetitions needed to reach `confidence`.
 *
 * decision: smallest r with exp(−r/(2q²)) ≤ 1 − confidence (a Chernoff
 * bound for the majority vote; the constant 1/2 is a convention).
 * guess_with_checker: smallest r with (1 − 1/q)^r ≤ 1 − confidence.
 */
inline std::uint64_t amplify_estimate(double q, double confidence, AmplifyMode mode) {
    detail::require(q >= 1.0 && std::isfinite(q), "amplify_estimate: need q >= 1");
    detail::require(confidence > 0.0 && confidence < 1.0,
                    "amplify_estimate: confidence must be in (0, 1)");
    const double fail = 1.0 - confidence;
    if (mode == AmplifyMode::decision) {
        auto ok = [&](double r) { return std::exp(-r / (2.0 * q * q)) <= fail; };
        auto r = static_cast<std::uint64_t>(std::max(1.0, std::ceil(2.0 * q * q * std::log(1.0 / fail))));
        while (r > 1 && ok(static_cast<double>(r - 1))) {
            --r;
        }
        while (!ok(static_cast<double>(r))) {
            ++r;
        }
        return r;
    }
    if (q == 1.0) {
        return 1;
    }
    const double miss = 1.0 - 1.0 / q;
    auto ok = [&](std::uint64_t r) { return std::pow(miss, static_cast<double>(r)) <= fail; };
    auto r = static_cast<std::uint64_t>(std::max(1.0, std::ceil(std::log(fail) / std::log(miss))));
    while (r > 1 && ok(r - 1)) {
        --r;
    }
    while (!ok(r)) {
        ++r;
    }
    return r;
}

} // namespace qapprox
