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
 * Samplers for the sphere and simplex measures, closed-form ball-volume
 * bounds, and Monte-Carlo hit-ratio estimators that check them.
 *
 * All bound evaluations go through log space so large exponents neither
 * overflow nor underflow.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <thread>
#include <vector>

#include "qapprox/error.hpp"
#include "qapprox/linalg.hpp"
#include "qapprox/rng.hpp"
#include "qapprox/synthesis.hpp"
#include "qapprox/tensor_core.hpp"

namespace qapprox {

/// Vector of `dim` independent standard complex Gaussians (E|z|² = 1).
inline ComplexVector complex_gaussian(Eigen::Index dim, RngStream &rng) {
    ComplexVector v(dim);
    constexpr double s = 0.70710678118654752440;
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = Complex(s * re, s * im);
    }
    return v;
}

/// Uniform point on the unit sphere of C^dim.
inline ComplexVector sample_sphere(Eigen::Index dim, RngStream &rng) {
    detail::require(dim >= 1, "sample_sphere: dimension must be positive");
    for (;;) {
        ComplexVector v = complex_gaussian(dim, rng);
        const double len = v.norm();
        if (len > 1e-150) {
            return v / len;
        }
    }
}

inline StateVec sample_haar_state(int n, RngStream &rng) {
    return {n, sample_sphere(static_cast<Eigen::Index>(dimension_of(n)), rng)};
}

/// Haar-random dim × dim unitary (Gaussian columns, Gram–Schmidt).
inline ComplexMatrix sample_haar_unitary(Eigen::Index dim, RngStream &rng) {
    for (;;) {
        ComplexMatrix g(dim, dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            g.col(j) = complex_gaussian(dim, rng);
        }
        ComplexMatrix q = gram_schmidt(g, 1e-10);
        if (q.cols() == dim) {
            return q;
        }
    }
}

/// k orthonormal states drawn from the nested-sphere measure.
inline OrthoSeq sample_ortho_seq(int n, std::size_t k, RngStream &rng) {
    const auto dim = static_cast<Eigen::Index>(dimension_of(n));
    detail::require(k >= 1 && k <= dimension_of(n), "sample_ortho_seq: k out of range");
    for (;;) {
        ComplexMatrix g(dim, static_cast<Eigen::Index>(k));
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            g.col(j) = complex_gaussian(dim, rng);
        }
        ComplexMatrix q = gram_schmidt(g, 1e-10);
        if (q.cols() == g.cols()) {
            return OrthoSeq::from_columns(n, q);
        }
    }
}

/// Uniform point of the probability simplex Δ(N) via normalized
/// exponential spacings.
inline std::vector<double> sample_simplex(std::size_t dim, RngStream &rng) {
    detail::require(dim >= 2, "sample_simplex: N must be at least 2");
    std::vector<double> x(dim);
    double total = 0.0;
    for (double &e : x) {
        e = rng.exponential();
        total += e;
    }
    for (double &e : x) {
        e /= total;
    }
    return x;
}

/// ρ(x) = x·√(1 − x²/4): the half-chord radius of a cap of chordal size x.
inline double chord_radius(double x) { return x * std::sqrt(1.0 - x * x / 4.0); }

/// Natural log of the cap bound (ε√(1−ε²/4))^{2m−1} / (√(2m−1)(1−ε²/2)).
inline double log_sphere_cap_bound(double eps, int m) {
    detail::require(eps > 0.0 && eps < std::numbers::sqrt2,
                    "sphere_cap_bound: need 0 < eps < sqrt(2)");
    detail::require(m >= 3, "sphere_cap_bound: need m >= 3");
    const double e = 2.0 * m - 1.0;
    return e * std::log(chord_radius(eps)) - 0.5 * std::log(e) -
           std::log1p(-eps * eps / 2.0);
}

/// Upper bound on the normalized sphere measure of {v : |v − u| ≤ ε} in
/// complex dimension m.
inline double sphere_cap_bound(double eps, int m) {
    return std::exp(log_sphere_cap_bound(eps, m));
}

/// (2ε)^{N−1}: bound on the simplex measure of an L1 ball of radius ε.
inline double simplex_ball_bound(double eps, std::size_t dim) {
    detail::require(eps >= 0.0, "simplex_ball_bound: need eps >= 0");
    detail::require(dim >= 2, "simplex_ball_bound: need N >= 2");
    return std::pow(2.0 * eps, static_cast<double>(dim - 1));
}

/// log μ(S_{2N}) = log(2π^N / Γ(N)).
inline double log_sphere_measure(std::size_t dim) {
    detail::require(dim >= 1, "sphere_measure: need N >= 1");
    const auto n = static_cast<double>(dim);
    return std::log(2.0) + n * std::log(std::numbers::pi) - std::lgamma(n);
}
inline double sphere_measure(std::size_t dim) { return std::exp(log_sphere_measure(dim)); }

/// log ν(Δ(N)) = log(√N / Γ(N)).
inline double log_simplex_measure(std::size_t dim) {
    detail::require(dim >= 1, "simplex_measure: need N >= 1");
    const auto n = static_cast<double>(dim);
    return 0.5 * std::log(n) - std::lgamma(n);
}
inline double simplex_measure(std::size_t dim) { return std::exp(log_simplex_measure(dim)); }

/// Bound on the μ_k measure of a weak-two-norm ball of radius δ, in both
/// the product form and the one-line simplification. The simplification
/// needs 2^{n+1} − 1 − 2i ≥ 2^n for every i < k, i.e. 2k ≤ 2^n + 1.
struct BallVolumeBound {
    double log2_value = 0.0;
    double log2_simplified = 0.0;
    bool simplified_valid = false;
    [[nodiscard]] double value() const { return std::exp2(log2_value); }
    [[nodiscard]] double simplified() const { return std::exp2(log2_simplified); }
};

inline BallVolumeBound ball_volume_report(double delta, int n, std::uint64_t k) {
    detail::require(delta > 0.0 && delta < std::numbers::sqrt2,
                    "ball_volume_bound: need 0 < delta < sqrt(2)");
    detail::require(n >= 1 && n <= 62, "ball_volume_bound: n out of range");
    const std::uint64_t dim = std::uint64_t{1} << n;
    detail::require(k >= 1 && k <= dim, "ball_volume_bound: need 1 <= k <= 2^n");

    const long double lr = std::log2(static_cast<long double>(chord_radius(delta)));
    const long double lshrink = -std::log2(1.0L - static_cast<long double>(delta) * delta / 2.0L);
    BallVolumeBound out;
    long double acc = static_cast<long double>(k) * lshrink;
    for (std::uint64_t i = 0; i < k; ++i) {
        const long double e = 2.0L * static_cast<long double>(dim) - 1.0L - 2.0L * static_cast<long double>(i);
        acc += e * lr - 0.5L * std::log2(e);
    }
    out.log2_value = static_cast<double>(acc);
    out.log2_simplified = static_cast<double>(static_cast<long double>(k) * lshrink +
                                              static_cast<long double>(k) *
                                                  static_cast<long double>(dim) * lr);
    out.simplified_valid = 2 * k <= dim + 1;
    return out;
}

inline double ball_volume_bound(double delta, int n, std::uint64_t k) {
    return ball_volume_report(delta, n, k).value();
}

/// Hit-ratio estimate with its closed-form comparator.
struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    double bound = 0.0;

    /// estimate ≤ bound + 3σ
    [[nodiscard]] bool within_bound(double sigmas = 3.0) const {
        return estimate <= bound + sigmas * std_error;
    }
};

inline constexpr std::uint64_t kMcChunk = std::uint64_t{1} << 16;

namespace detail {

/// Counts hits over `samples` draws split into fixed-size chunks; chunk c
/// draws from rng.substream(c), so the total is independent of how chunks
/// are scheduled across threads.
template <class Trial>
std::uint64_t parallel_hits(std::uint64_t samples, const RngStream &rng, Trial trial) {
    const std::uint64_t chunks = (samples + kMcChunk - 1) / kMcChunk;
    std::vector<std::uint64_t> hits(chunks, 0);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) {
            RngStream local = rng.substream(c);
            const std::uint64_t count = std::min(kMcChunk, samples - c * kMcChunk);
            std::uint64_t h = 0;
            for (std::uint64_t s = 0; s < count; ++s) {
                h += trial(local) ? 1 : 0;
            }
            hits[c] = h;
        }
    };
    const unsigned threads = std::max(1U, std::min<unsigned>(
        std::thread::hardware_concurrency(), static_cast<unsigned>(std::min<std::uint64_t>(chunks, 64))));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        worker();
    }
    return std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
}

inline McEstimate make_estimate(std::uint64_t hits, std::uint64_t samples, double bound) {
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples, bound};
}

} // namespace detail

/**
 * Fraction of uniform unit vectors v in the first m coordinates with
 * |v − u| ≤ ε. `u` is a unit vector of dimension ≥ m; when it sticks out of
 * that subspace the cap is smaller, which the bound still covers.
 */
inline McEstimate mc_sphere_cap(const ComplexVector &u, double eps, int m,
                                std::uint64_t samples, const RngStream &rng) {
    detail::require(m >= 3, "mc_sphere_cap: need m >= 3");
    detail::require(u.size() >= m, "mc_sphere_cap: centre has fewer than m coordinates");
    detail::require(std::abs(u.norm() - 1.0) <= 1e-9, "mc_sphere_cap: centre must be a unit vector");
    detail::require(samples >= 1, "mc_sphere_cap: need at least one sample");
    const double bound = sphere_cap_bound(eps, m);
    const double eps2 = eps * eps;
    const double outside = u.size() > m ? u.tail(u.size() - m).squaredNorm() : 0.0;
    const ComplexVector head = u.head(m);
    const std::uint64_t hits = detail::parallel_hits(samples, rng, [&](RngStream &r) {
        const ComplexVector v = sample_sphere(m, r);
        return (v - head).squaredNorm() + outside <= eps2;
    });
    return detail::make_estimate(hits, samples, bound);
}

inline McEstimate mc_sphere_cap(const StateVec &u, double eps, int m,
                                std::uint64_t samples, const RngStream &rng) {
    return mc_sphere_cap(u.amplitudes(), eps, m, samples, rng);
}

/// Fraction of uniform simplex points x with Σ|x_i − v_i| ≤ ε.
inline McEstimate mc_simplex_ball(const std::vector<double> &centre, double eps,
                                  std::uint64_t samples, const RngStream &rng) {
    const std::size_t dim = centre.size();
    detail::require(dim >= 2, "mc_simplex_ball: need N >= 2");
    double total = 0.0;
    for (double c : centre) {
        detail::require(c >= 0.0, "mc_simplex_ball: centre must lie on the simplex");
        total += c;
    }
    detail::require(std::abs(total - 1.0) <= 1e-9, "mc_simplex_ball: centre must sum to 1");
    detail::require(samples >= 1, "mc_simplex_ball: need at least one sample");
    const double bound = simplex_ball_bound(eps, dim);
    const std::uint64_t hits = detail::parallel_hits(samples, rng, [&](RngStream &r) {
        const auto x = sample_simplex(dim, r);
        double d = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            d += std::abs(x[i] - centre[i]);
        }
        return d <= eps;
    });
    return detail::make_estimate(hits, samples, bound);
}

inline std::vector<double> simplex_barycenter(std::size_t dim) {
    return std::vector<double>(dim, 1.0 / static_cast<double>(dim));
}

} // namespace qapprox
