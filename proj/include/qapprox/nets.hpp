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
 * A δ-net over g-qubit unitaries, addressed by index and never
 * materialized.
 *
 * Each complex entry of a 2^g × 2^g matrix is rounded to a square grid on
 * [−1, 1]² with axis spacing at most √2·ρ, so every entry moves by at most
 * ρ and the whole matrix by at most ρ·2^g = δ/2 in Frobenius norm. A net
 * point is the nearest unitary to a grid matrix; projecting at most doubles
 * the distance, which keeps every unitary within δ of its net point.
 *
 * A grid matrix is identified by a mixed-radix index: digit 2e is the real
 * part and digit 2e + 1 the imaginary part of row-major entry e, digit 0
 * least significant, every digit in [0, axis_points).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qapprox/error.hpp"
#include "qapprox/linalg.hpp"
#include "qapprox/metrics.hpp"

namespace qapprox {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxNetArity = 3;

struct NetSpec {
    int g = 1;
    double delta = 1.0;            // covering radius in two-norm
    double rho = 0.25;             // per-entry rounding radius
    std::uint64_t axis_points = 2; // grid values per real axis
    double spacing = 2.0;          // distance between adjacent axis values

    [[nodiscard]] Eigen::Index dim() const { return Eigen::Index{1} << g; }
    [[nodiscard]] std::size_t digits() const {
        return 2 * static_cast<std::size_t>(dim() * dim());
    }
    [[nodiscard]] double axis_value(std::uint64_t i) const {
        return -1.0 + static_cast<double>(i) * spacing;
    }

    /// Grid for covering radius δ: ρ·2^g = δ/2, spacing ≤ √2·ρ.
    static NetSpec from_delta(int g, double delta) {
        detail::require(g >= 1 && g <= kMaxNetArity, "NetSpec: g must be in [1, 3]");
        detail::require(delta > 0.0 && delta < 2.0, "NetSpec: need 0 < delta < 2");
        NetSpec s;
        s.g = g;
        s.delta = delta;
        s.rho = delta / (2.0 * std::ldexp(1.0, g));
        const double target = std::numbers::sqrt2 * s.rho;
        s.axis_points = static_cast<std::uint64_t>(std::ceil(2.0 / target - 1e-12)) + 1;
        s.spacing = 2.0 / static_cast<double>(s.axis_points - 1);
        return s;
    }

    /// Grid with a prescribed number of axis values; ρ and δ follow.
    static NetSpec from_axis_points(int g, std::uint64_t axis_points) {
        detail::require(g >= 1 && g <= kMaxNetArity, "NetSpec: g must be in [1, 3]");
        detail::require(axis_points >= 2, "NetSpec: need at least two axis points");
        NetSpec s;
        s.g = g;
        s.axis_points = axis_points;
        s.spacing = 2.0 / static_cast<double>(axis_points - 1);
        s.rho = s.spacing / std::numbers::sqrt2;
        s.delta = 2.0 * std::ldexp(1.0, g) * s.rho;
        return s;
    }
};

/// Mixed-radix identifier of one grid matrix.
struct NetIndex {
    BigInt value;
    friend bool operator==(const NetIndex &, const NetIndex &) = default;
};

struct NetCardinality {
    BigInt exact;              // axis_points^(2·4^g)
    BigInt paper_bound;        // ⌈(2/δ)^(16^g)⌉
    double paper_count_log2{}; // log2 of (1/(2ρ²))^(4^g), the count with
                               // 1/(2ρ²) values per entry
};

namespace detail {

inline BigInt pow_big(BigInt base, std::uint64_t exp) {
    BigInt out = 1;
    while (exp != 0) {
        if (exp & 1U) {
            out *= base;
        }
        exp >>= 1U;
        if (exp != 0) {
            base *= base;
        }
    }
    return out;
}

/// ⌈(2/x)^e⌉ computed exactly from the binary expansion of x.
inline BigInt ceil_pow_two_over(double x, std::uint64_t e) {
    int ex = 0;
    const double frac = std::frexp(x, &ex);
    auto mant = static_cast<std::uint64_t>(std::ldexp(frac, 53));
    ex -= 53;
    while ((mant & 1U) == 0) {
        mant >>= 1U;
        ++ex;
    }
    // 2/x = 2^(1 − ex) / mant
    const std::int64_t t = 1 - static_cast<std::int64_t>(ex);
    BigInt num = 1;
    BigInt den = pow_big(BigInt(mant), e);
    if (t >= 0) {
        num <<= static_cast<std::uint64_t>(t) * e;
    } else {
        den <<= static_cast<std::uint64_t>(-t) * e;
    }
    return (num + den - 1) / den;
}

} // namespace detail

inline NetCardinality net_cardinality(const NetSpec &spec) {
    const std::uint64_t entries = static_cast<std::uint64_t>(spec.dim() * spec.dim());
    NetCardinality c;
    c.exact = detail::pow_big(BigInt(spec.axis_points), 2 * entries);
    c.paper_bound = detail::ceil_pow_two_over(spec.delta, entries * entries);
    c.paper_count_log2 =
        static_cast<double>(entries) * std::log2(1.0 / (2.0 * spec.rho * spec.rho));
    return c;
}

inline std::vector<std::uint64_t> decode_net_index(const NetIndex &index, const NetSpec &spec) {
    const BigInt total = detail::pow_big(BigInt(spec.axis_points), spec.digits());
    detail::require(index.value >= 0 && index.value < total, "net index out of range");
    std::vector<std::uint64_t> digits(spec.digits());
    BigInt rest = index.value;
    const BigInt radix = spec.axis_points;
    for (auto &d : digits) {
        d = static_cast<std::uint64_t>(rest % radix);
        rest /= radix;
    }
    return digits;
}

inline NetIndex encode_net_index(const std::vector<std::uint64_t> &digits, const NetSpec &spec) {
    detail::require(digits.size() == spec.digits(), "net index: wrong digit count");
    BigInt v = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        detail::require(*it < spec.axis_points, "net index: digit out of range");
        v = v * spec.axis_points + *it;
    }
    return {v};
}

/// The (generally non-unitary) grid matrix named by `index`.
inline ComplexMatrix net_grid_matrix(const NetIndex &index, const NetSpec &spec) {
    const auto digits = decode_net_index(index, spec);
    const Eigen::Index d = spec.dim();
    ComplexMatrix a(d, d);
    for (Eigen::Index e = 0; e < d * d; ++e) {
        const auto de = static_cast<std::size_t>(e);
        a(e / d, e % d) = Complex(spec.axis_value(digits[2 * de]),
                                  spec.axis_value(digits[2 * de + 1]));
    }
    return a;
}

/// Nearest unitary to the grid matrix; NumericalError when the grid matrix
/// is rank deficient (callers treat that index as absent from the net).
inline ComplexMatrix net_point(const NetIndex &index, const NetSpec &spec) {
    return nearest_unitary(net_grid_matrix(index, spec));
}

/// Index of the grid matrix obtained by rounding every real and imaginary
/// part of U to the nearest axis value.
inline NetIndex nearest_net_index(const ComplexMatrix &u, const NetSpec &spec) {
    detail::require(u.rows() == spec.dim() && u.cols() == spec.dim(),
                    "nearest_net_index: matrix must be 2^g × 2^g");
    detail::require(is_unitary(u, 1e-8), "nearest_net_index: matrix is not unitary");
    const Eigen::Index d = spec.dim();
    std::vector<std::uint64_t> digits(spec.digits());
    auto snap = [&](double x) {
        const double r = std::round((x + 1.0) / spec.spacing);
        return static_cast<std::uint64_t>(
            std::clamp(r, 0.0, static_cast<double>(spec.axis_points - 1)));
    };
    for (Eigen::Index e = 0; e < d * d; ++e) {
        const auto de = static_cast<std::size_t>(e);
        const Complex z = u(e / d, e % d);
        digits[2 * de] = snap(z.real());
        digits[2 * de + 1] = snap(z.imag());
    }
    return encode_net_index(digits, spec);
}

/// Visits every net point in index order, skipping rank-deficient grid
/// matrices. Only allowed when the grid has at most 2^24 members.
inline std::uint64_t for_each_net_point(
    const NetSpec &spec,
    const std::function<void(const NetIndex &, const ComplexMatrix &)> &visit) {
    const BigInt total = detail::pow_big(BigInt(spec.axis_points), spec.digits());
    detail::require(total <= (BigInt(1) << 24), "for_each_net_point: net too large to enumerate");
    const auto count = static_cast<std::uint64_t>(total);
    std::uint64_t visited = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        const NetIndex idx{BigInt(i)};
        try {
            visit(idx, net_point(idx, spec));
            ++visited;
        } catch (const NumericalError &) {
        }
    }
    return visited;
}

/// C(n, g)^b: number of gate-position structures for b gates of arity g.
inline BigInt circuit_structure_count(std::uint64_t n, std::uint64_t g, std::uint64_t b) {
    detail::require(g <= n, "circuit_structure_count: need g <= n");
    BigInt choose = 1;
    for (std::uint64_t i = 0; i < g; ++i) {
        choose = choose * (n - i) / (i + 1);
    }
    return detail::pow_big(choose, b);
}

} // namespace qapprox
