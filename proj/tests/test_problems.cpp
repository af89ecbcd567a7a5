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
#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qapprox/problems.hpp"

using namespace qapprox;
using Catch::Approx;

namespace {

using Table = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

ComplexMatrix pauli_x() {
    ComplexMatrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

/// Worst-case probability computed from the dense circuit matrix: the
/// output for input b is column b; sum |amp|² over indices whose low
/// `bits` bits equal f(b).
double brute_p_star(const Circuit &c, const Table &table, int bits) {
    const ComplexMatrix u = oracle::brute_circuit(c);
    const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
    double worst = 1.0;
    for (const auto &[b, fb] : table) {
        double p = 0.0;
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            if ((static_cast<std::uint64_t>(i) & mask) == fb) {
                p += std::norm(u(i, static_cast<Eigen::Index>(b)));
            }
        }
        worst = std::min(worst, p);
    }
    return worst;
}

Table random_table(oracle::TestRng &rng, int n, std::size_t size, std::uint64_t values) {
    std::vector<std::uint64_t> inputs(std::size_t{1} << n);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        inputs[i] = i;
    }
    std::shuffle(inputs.begin(), inputs.end(), rng.engine());
    Table t;
    for (std::size_t i = 0; i < size; ++i) {
        t.emplace_back(inputs[i], rng.below(values));
    }
    return t;
}

} // namespace

TEST_CASE("identity circuit decides the low bit perfectly", "[problems]") {
    Table t;
    for (std::uint64_t b = 0; b < 4; ++b) {
        t.emplace_back(b, b & 1U);
    }
    const Advantage a = decision_advantage(Circuit(2), DecisionProblem(2, t));
    CHECK(a.p_star == 1.0);
    REQUIRE(a.q.has_value());
    CHECK(*a.q == 1.0);
}

TEST_CASE("a Hadamard gives no decision advantage", "[problems]") {
    ComplexMatrix h(2, 2);
    h << 1, 1, 1, -1;
    Circuit c(1);
    c.append(LocalGate{{0}, h / std::numbers::sqrt2});
    const Advantage a = decision_advantage(c, DecisionProblem(1, {{0, 0}, {1, 1}}));
    CHECK(a.p_star == Approx(0.5).margin(1e-15));
    CHECK_FALSE(a.q.has_value());
}

TEST_CASE("decision advantage matches the amplitude oracle", "[problems]") {
    oracle::TestRng rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        const int width = 3;
        const int n = 1 + static_cast<int>(rng.below(3));
        const Circuit c = oracle::random_circuit(rng, width, 4);
        const std::size_t size = std::min<std::size_t>(4, std::size_t{1} << n);
        const Table t = random_table(rng, n, size, 2);
        const Advantage a = decision_advantage(c, DecisionProblem(n, t));
        const double expect = brute_p_star(c, t, 1);
        CHECK(a.p_star == Approx(expect).margin(1e-12));
        if (expect > 0.5 + 1e-9) {
            REQUIRE(a.q.has_value());
            CHECK(*a.q == Approx(1.0 / (2.0 * expect - 1.0)).epsilon(1e-9));
        } else if (expect < 0.5 - 1e-9) {
            CHECK_FALSE(a.q.has_value());
        }
    }
}

TEST_CASE("gates that respect the first bit leave the decision advantage unchanged", "[problems]") {
    oracle::TestRng rng(62);
    for (int trial = 0; trial < 30; ++trial) {
        const Circuit c = oracle::random_circuit(rng, 3, 4);
        const Table t = random_table(rng, 2, 3, 2);
        const DecisionProblem p(2, t);
        Circuit extended = c;
        extended.append(LocalGate{{1, 2}, rng.unitary(4)});
        extended.append(ControlledGate{{{0, true}}, 2, rng.unitary(2)});
        extended.append(ControlledGate{{{0, false}, {2, true}}, 1, rng.unitary(2)});
        const ComplexMatrix diag = ComplexMatrix(Eigen::Vector2cd(1.0, std::polar(1.0, 0.4)).asDiagonal());
        extended.append(LocalGate{{0}, diag});
        CHECK(decision_advantage(extended, p).p_star == Approx(decision_advantage(c, p).p_star).margin(1e-12));
    }
}

TEST_CASE("guess advantage", "[problems]") {
    for (int n = 1; n <= 3; ++n) {
        Table t;
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
            t.emplace_back(b, b);
        }
        const Advantage a = guess_advantage(Circuit(n + 1), GuessProblem(n, t));
        CHECK(a.p_star == 1.0);
        CHECK(*a.q == 1.0);

        Circuit flip(n);
        for (int q = 0; q < n; ++q) {
            flip.append(LocalGate{{q}, pauli_x()});
        }
        const Advantage none = guess_advantage(flip, GuessProblem(n, t));
        CHECK(none.p_star == 0.0);
        CHECK_FALSE(none.q.has_value());
    }

    oracle::TestRng rng(63);
    for (int trial = 0; trial < 50; ++trial) {
        const Circuit c = oracle::random_circuit(rng, 4, 5);
        const Table t = random_table(rng, 2, 1 + rng.below(4), 4);
        const Advantage a = guess_advantage(c, GuessProblem(2, t));
        const double expect = brute_p_star(c, t, 2);
        CHECK(a.p_star == Approx(expect).margin(1e-12));
        if (expect > 1e-9) {
            CHECK(*a.q == Approx(1.0 / expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("problem validation", "[problems]") {
    CHECK_THROWS_AS(DecisionProblem(2, {}), DomainError);
    CHECK_THROWS_AS(DecisionProblem(2, {{4, 0}}), DomainError);
    CHECK_THROWS_AS(DecisionProblem(2, {{1, 2}}), DomainError);
    CHECK_THROWS_AS(DecisionProblem(2, {{1, 0}, {1, 1}}), DomainError);
    CHECK_THROWS_AS(GuessProblem(2, {{1, 4}}), DomainError);
    CHECK_THROWS_AS(decision_advantage(Circuit(1), DecisionProblem(2, {{0, 0}})), DomainError);
}

TEST_CASE("amplify_estimate", "[problems]") {
    CHECK(amplify_estimate(1.0, 0.99, AmplifyMode::guess_with_checker) == 1);
    CHECK(amplify_estimate(2.0, 0.99, AmplifyMode::guess_with_checker) == 7);
    CHECK(amplify_estimate(1.0, 0.5, AmplifyMode::decision) ==
          static_cast<std::uint64_t>(std::ceil(2.0 * std::log(2.0))));

    for (double conf : {0.9, 0.99, 0.999999}) {
        for (double q : {8.0, 16.0, 32.0, 64.0}) {
            const auto r1 = static_cast<double>(amplify_estimate(q, conf, AmplifyMode::decision));
            const auto r2 = static_cast<double>(amplify_estimate(2.0 * q, conf, AmplifyMode::decision));
            CHECK(r2 / r1 == Approx(4.0).epsilon(0.02));
            const auto r = static_cast<std::uint64_t>(r1);
            CHECK(std::exp(-static_cast<double>(r) / (2.0 * q * q)) <= 1.0 - conf);
            CHECK(std::exp(-static_cast<double>(r - 1) / (2.0 * q * q)) > 1.0 - conf);
        }
    }
    CHECK_THROWS_AS(amplify_estimate(0.5, 0.9, AmplifyMode::decision), DomainError);
    CHECK_THROWS_AS(amplify_estimate(2.0, 1.0, AmplifyMode::decision), DomainError);
}
