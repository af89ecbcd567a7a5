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
 * Closed-form counting and measure bounds for b-gate circuits.
 *
 * Every logarithm here is base 2. Fractions and measures are returned as
 * log2 exponents in extended precision and clipped to [0, 1] only when a
 * table row is built, so exponents stay usable for crossover searches.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qapprox/error.hpp"

namespace qapprox {

using BigInt = boost::multiprecision::cpp_int;
using Extended = long double;

struct BoundParams {
    std::uint64_t n = 1;
    std::uint64_t l = 1;
    std::uint64_t k = 1;
    std::uint64_t g = 2;
    std::uint64_t b = 2;
    double eps = 0.1;
    double alpha = 1.0;
    double q = 2.0;
    BigInt D_size = 1;
};

/// Lower bound on the two-qubit gate count needed to map |i⟩ to arbitrary
/// orthonormal targets for i < k: (k/9)(2^{n+1} − k) − n/3 − 1/9. Negative
/// values are vacuous. Evaluated as an exact rational over 9.
inline Extended thm34_lower(std::uint64_t n, const BigInt &k) {
    detail::require(n <= 16000, "thm34: n too large");
    const BigInt dim = BigInt(1) << n;
    detail::require(k >= 0 && k <= dim, "thm34: need 0 <= k <= 2^n");
    const BigInt numerator = k * (2 * dim - k) - 3 * BigInt(n) - 1;
    // Split into quotient and remainder so large values keep full precision.
    BigInt quotient = numerator / 9;
    BigInt remainder = numerator % 9;
    return quotient.convert_to<Extended>() + remainder.convert_to<Extended>() / 9.0L;
}

inline Extended thm34_lower(std::uint64_t n, std::uint64_t k) {
    return thm34_lower(n, BigInt(k));
}

enum class Thm41Variant {
    proof_end, // b(2^{4g}(log b + log(2/(αε))) + log n) − k(…)
    displayed, // 2^{4g}·b·(log b + log n + log(2/(αε))) − k(…)
};

namespace detail {

inline Extended lg(Extended x) { return std::log2(x); }

inline void require_common(const BoundParams &p) {
    require(p.n >= 1, "bound: need n >= 1");
    require(p.b >= 1, "bound: need b >= 1");
    require(p.g >= 1 && p.g <= 4000, "bound: g out of range");
    require(p.alpha > 0.0, "bound: need alpha > 0");
    require(p.eps > 0.0, "bound: need eps > 0");
}

inline Extended pow2(std::uint64_t e) { return std::ldexp(1.0L, static_cast<int>(e)); }

} // namespace detail

/**
 * log2 of the bound on the μ_k measure of unitaries whose action on the
 * first k basis states is ε-approximable (weak two-norm) by b gates of
 * arity g. Requires α > 0 and (1+α)ε < √2.
 */
inline Extended thm41_log2(const BoundParams &p, Thm41Variant variant = Thm41Variant::proof_end) {
    detail::require_common(p);
    const Extended x = (1.0L + p.alpha) * static_cast<Extended>(p.eps);
    detail::require(x < std::numbers::sqrt2_v<Extended>, "thm41: need (1+alpha)*eps < sqrt(2)");
    detail::require(p.n <= 16000, "thm41: n too large");
    detail::require(static_cast<Extended>(p.k) <= detail::pow2(p.n), "thm41: need k <= 2^n");

    const Extended b = static_cast<Extended>(p.b);
    const Extended gates = detail::pow2(4 * p.g);
    const Extended net = detail::lg(2.0L / (static_cast<Extended>(p.alpha) * p.eps));
    const Extended rho = x * std::sqrt(1.0L - x * x / 4.0L);
    const Extended ball = detail::pow2(p.n) * detail::lg(1.0L / rho) -
                          detail::lg(1.0L / (1.0L - x * x / 2.0L));

    Extended cover = 0.0L;
    switch (variant) {
    case Thm41Variant::proof_end:
        cover = b * (gates * (detail::lg(b) + net) + detail::lg(static_cast<Extended>(p.n)));
        break;
    case Thm41Variant::displayed:
        cover = gates * b * (detail::lg(b) + detail::lg(static_cast<Extended>(p.n)) + net);
        break;
    }
    return cover - static_cast<Extended>(p.k) * ball;
}

/**
 * log2 of the bound on the ν_{l,k} measure of unitaries whose l-bit output
 * statistics on the first k inputs are ε-approximable by b gates. The
 * printed exponent uses k·2^{l−1}; `sharp` uses k(2^l − 1), which is what
 * the underlying ball-volume bound gives. Requires α > 0 and 2(1+α)ε < 1.
 */
inline Extended thm45_log2(const BoundParams &p, bool sharp = false) {
    detail::require_common(p);
    detail::require(p.l >= 1 && p.l <= 16000, "thm45: l out of range");
    const Extended x = 2.0L * (1.0L + p.alpha) * static_cast<Extended>(p.eps);
    detail::require(x < 1.0L, "thm45: need 2(1+alpha)*eps < 1");

    const Extended b = static_cast<Extended>(p.b);
    const Extended gates = detail::pow2(4 * p.g);
    const Extended cover =
        b * (gates * (detail::lg(b) + detail::lg(4.0L / (static_cast<Extended>(p.alpha) * p.eps))) +
             detail::lg(static_cast<Extended>(p.n)));
    const Extended weight = sharp ? detail::pow2(p.l) - 1.0L : detail::pow2(p.l - 1);
    return cover - static_cast<Extended>(p.k) * weight * detail::lg(1.0L / x);
}

namespace detail {

inline void require_section5(std::uint64_t n, std::uint64_t g, std::uint64_t b, double q) {
    require(n >= 1, "bound: need n >= 1");
    require(g >= 2, "bound: need g >= 2");
    require(b >= 2, "bound: need b >= 2");
    require(g <= 4000, "bound: g out of range");
    require(q > 1.0, "bound: need q > 1");
}

inline Extended circuit_term(std::uint64_t n, std::uint64_t g, std::uint64_t b, double q) {
    return (lg(static_cast<Extended>(b)) + lg(static_cast<Extended>(q)) +
            lg(static_cast<Extended>(n))) *
           static_cast<Extended>(b) * pow2(4 * g + 1);
}

} // namespace detail

/// log2 of the fraction of decision problems on a domain of size |D| that
/// b gates of arity g decide with advantage q.
inline Extended thm51_log2(std::uint64_t n, const BigInt &D_size, std::uint64_t g,
                           std::uint64_t b, double q) {
    detail::require_section5(n, g, b, q);
    detail::require(D_size >= 0, "thm51: need |D| >= 0");
    return detail::circuit_term(n, g, b, q) - D_size.convert_to<Extended>();
}

/// log2 of the fraction of functions D → n-bit patterns guessed with
/// advantage q. Nontrivial only when n > log2(4q).
inline Extended thm53_log2(std::uint64_t n, const BigInt &D_size, std::uint64_t g,
                           std::uint64_t b, double q) {
    detail::require_section5(n, g, b, q);
    detail::require(D_size >= 0, "thm53: need |D| >= 0");
    const Extended per = static_cast<Extended>(n) - detail::lg(4.0L * static_cast<Extended>(q));
    return detail::circuit_term(n, g, b, q) - per * D_size.convert_to<Extended>();
}

/// min(1, 2^x); 0 when the exponent is far below the double range.
inline double clip_fraction(Extended log2_value) {
    if (log2_value >= 0.0L) {
        return 1.0;
    }
    return static_cast<double>(std::exp2(log2_value));
}

enum class BoundFormula { thm41, thm45, thm51, thm53 };

inline std::string formula_name(BoundFormula f) {
    switch (f) {
    case BoundFormula::thm41:
        return "thm41";
    case BoundFormula::thm45:
        return "thm45";
    case BoundFormula::thm51:
        return "thm51";
    case BoundFormula::thm53:
        return "thm53";
    }
    return "?";
}

/// log2 exponent of `formula` at the given parameters (default variants).
inline Extended bound_log2(BoundFormula formula, const BoundParams &p) {
    switch (formula) {
    case BoundFormula::thm41:
        return thm41_log2(p);
    case BoundFormula::thm45:
        return thm45_log2(p);
    case BoundFormula::thm51:
        return thm51_log2(p.n, p.D_size, p.g, p.b, p.q);
    case BoundFormula::thm53:
        return thm53_log2(p.n, p.D_size, p.g, p.b, p.q);
    }
    throw DomainError("bound: unknown formula");
}

/**
 * Smallest b ≥ 2 at which the clipped bound reaches `target` (the gate
 * count where the counting argument stops ruling anything out).
 *
 * Doubles b until the target is met, checking along the way that the
 * exponent grows with b, then bisects. Throws DomainError when no b below
 * 2^63 reaches the target or the formula is not increasing in b.
 */
inline std::uint64_t crossover_b(BoundFormula formula, BoundParams p, double target = 1.0) {
    detail::require(target > 0.0 && target <= 1.0, "crossover_b: target must be in (0, 1]");
    const Extended goal = std::log2(static_cast<Extended>(target));
    auto at = [&](std::uint64_t b) {
        p.b = b;
        return bound_log2(formula, p);
    };

    std::uint64_t lo = 2;
    Extended previous = at(lo);
    if (previous >= goal) {
        return lo;
    }
    std::uint64_t hi = 4;
    for (;;) {
        const Extended v = at(hi);
        detail::require(v > previous, "crossover_b: formula is not increasing in b");
        if (v >= goal) {
            break;
        }
        previous = v;
        lo = hi;
        detail::require(hi < (std::uint64_t{1} << 63), "crossover_b: no crossover below 2^63");
        hi *= 2;
    }
    // Invariant: at(lo) < goal <= at(hi).
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (at(mid) >= goal) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

/// One evaluated row of a bound table.
struct BoundRow {
    std::vector<std::pair<std::string, std::string>> params;
    Extended log2_value = 0.0L;
    double clipped = 0.0;
};

inline BoundRow make_bound_row(std::vector<std::pair<std::string, std::string>> params,
                               Extended log2_value) {
    return {std::move(params), log2_value, clip_fraction(log2_value)};
}

} // namespace qapprox
