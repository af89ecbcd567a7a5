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
 * Reference computations shared by the test suites. Each one takes a route
 * independent of the library code it checks: explicit bit loops instead of
 * strided kernels, Hermitian eigenvalues instead of SVD, and so on.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qapprox/qapprox.hpp"

namespace oracle {

using qapprox::Complex;
using qapprox::ComplexMatrix;
using qapprox::ComplexVector;

/// Independent generator for test inputs (not the library's Philox).
class TestRng {
  public:
    explicit TestRng(std::uint64_t seed) : eng_(seed) {}

    double normal() { return gauss_(eng_); }
    double uniform() { return unif_(eng_); }
    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_); }

    ComplexMatrix gaussian(Eigen::Index rows, Eigen::Index cols) {
        ComplexMatrix m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i) {
            for (Eigen::Index j = 0; j < cols; ++j) {
                m(i, j) = Complex(normal(), normal());
            }
        }
        return m;
    }

    /// Unitary from the Householder QR of a Gaussian matrix, phases fixed.
    ComplexMatrix unitary(Eigen::Index dim) {
        const ComplexMatrix a = gaussian(dim, dim);
        Eigen::HouseholderQR<ComplexMatrix> qr(a);
        ComplexMatrix q = qr.householderQ();
        const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Eigen::Index j = 0; j < dim; ++j) {
            const Complex d = r(j, j);
            q.col(j) *= d / std::abs(d);
        }
        return q;
    }

    ComplexVector unit_vector(Eigen::Index dim) {
        ComplexVector v = gaussian(dim, 1).col(0);
        return v / v.norm();
    }

    qapprox::StateVec state(int n) {
        return {n, unit_vector(static_cast<Eigen::Index>(qapprox::dimension_of(n)))};
    }

    std::mt19937_64 &engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> gauss_{0.0, 1.0};
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

/// Full-space matrix of a gate built entry by entry: ⟨out|G|in⟩ is read off
/// from the gate's own matrix whenever `out` and `in` agree off the gate's
/// qubits.
inline ComplexMatrix brute_embed(const qapprox::Gate &gate, int n) {
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix u = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    auto bit = [](std::size_t x, int q) { return static_cast<std::size_t>((x >> q) & 1U); };

    if (const auto *g = std::get_if<qapprox::LocalGate>(&gate)) {
        std::size_t mask = 0;
        for (int q : g->positions) {
            mask |= std::size_t{1} << q;
        }
        for (std::size_t out = 0; out < dim; ++out) {
            for (std::size_t in = 0; in < dim; ++in) {
                if ((out & ~mask) != (in & ~mask)) {
                    continue;
                }
                std::size_t r = 0;
                std::size_t c = 0;
                for (std::size_t j = 0; j < g->positions.size(); ++j) {
                    r |= bit(out, g->positions[j]) << j;
                    c |= bit(in, g->positions[j]) << j;
                }
                u(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) =
                    g->matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
    } else if (const auto *g = std::get_if<qapprox::ControlledGate>(&gate)) {
        for (std::size_t out = 0; out < dim; ++out) {
            for (std::size_t in = 0; in < dim; ++in) {
                const std::size_t t = std::size_t{1} << g->target;
                if ((out & ~t) != (in & ~t)) {
                    continue;
                }
                bool fire = true;
                for (const auto &c : g->controls) {
                    fire = fire && (bit(in, c.qubit) == (c.polarity ? 1U : 0U));
                }
                if (fire) {
                    u(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) =
                        g->matrix(static_cast<Eigen::Index>(bit(out, g->target)),
                                  static_cast<Eigen::Index>(bit(in, g->target)));
                } else if (out == in) {
                    u(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) = 1.0;
                }
            }
        }
    } else {
        const auto &phase = std::get<qapprox::PhaseOnZero>(gate);
        u = ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        u(0, 0) = std::polar(1.0, phase.w);
    }
    return u;
}

/// Product of brute_embed matrices, last gate leftmost.
inline ComplexMatrix brute_circuit(const qapprox::Circuit &c) {
    const auto dim = static_cast<Eigen::Index>(qapprox::dimension_of(c.num_qubits()));
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    for (const auto &g : c.gates()) {
        u = brute_embed(g, c.num_qubits()) * u;
    }
    return u;
}

/// Probabilities of the low l bits by summing |amp|² over all indices.
inline std::vector<double> brute_prefix(const ComplexVector &amps, int l) {
    std::vector<double> p(std::size_t{1} << l, 0.0);
    for (Eigen::Index b = 0; b < amps.size(); ++b) {
        p[static_cast<std::size_t>(b) & ((std::size_t{1} << l) - 1)] += std::norm(amps(b));
    }
    return p;
}

/// Singular values from the eigenvalues of the Hermitian matrix A*A,
/// descending.
inline std::vector<double> singular_values_via_gram(const ComplexMatrix &a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a.adjoint() * a);
    std::vector<double> s;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        s.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
    }
    std::sort(s.rbegin(), s.rend());
    s.resize(static_cast<std::size_t>(std::min(a.rows(), a.cols())));
    return s;
}

/// Random gate on n qubits: Local of arity 1 or 2, Controlled with random
/// controls, or PhaseOnZero.
inline qapprox::Gate random_gate(TestRng &rng, int n) {
    std::vector<int> qubits(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        qubits[static_cast<std::size_t>(i)] = i;
    }
    std::shuffle(qubits.begin(), qubits.end(), rng.engine());
    const auto kind = rng.below(3);
    if (kind == 0) {
        const int arity = n >= 2 ? 1 + static_cast<int>(rng.below(2)) : 1;
        std::vector<int> pos(qubits.begin(), qubits.begin() + arity);
        return qapprox::LocalGate{pos, rng.unitary(Eigen::Index{1} << arity)};
    }
    if (kind == 1) {
        const auto ncontrols = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)));
        std::vector<qapprox::Control> controls;
        for (std::size_t i = 0; i < ncontrols; ++i) {
            controls.push_back({qubits[i + 1], rng.below(2) == 1});
        }
        return qapprox::ControlledGate{controls, qubits[0], rng.unitary(2)};
    }
    return qapprox::PhaseOnZero{(rng.uniform() * 2.0 - 1.0) * std::numbers::pi};
}

inline qapprox::Circuit random_circuit(TestRng &rng, int n, int gates) {
    qapprox::Circuit c(n);
    for (int i = 0; i < gates; ++i) {
        c.append(random_gate(rng, n));
    }
    return c;
}

/// One-sample Kolmogorov–Smirnov statistic of `xs` against `cdf`.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)> &cdf) {
    std::sort(xs.begin(), xs.end());
    const auto n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

/// Asymptotic KS p-value, Q(λ) = 2 Σ (−1)^{j−1} e^{−2j²λ²}.
inline double ks_p_value(double d, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    double sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1 ? 1.0 : -1.0) * term;
        if (term < 1e-16) {
            break;
        }
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

} // namespace oracle
