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
#include "qapprox/tensor_core.hpp"

using namespace qapprox;
using Catch::Approx;

namespace {

ComplexMatrix pauli_x() {
    ComplexMatrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

ComplexMatrix hadamard() {
    ComplexMatrix h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::numbers::sqrt2;
}

} // namespace

TEST_CASE("embed_gate of the identity is the identity", "[tensor_core]") {
    const ComplexMatrix u = embed_gate(LocalGate{{0}, ComplexMatrix::Identity(2, 2)}, 2);
    CHECK(u.isApprox(ComplexMatrix::Identity(4, 4)));
}

TEST_CASE("X on qubit 1 sends index 0 to index 2", "[tensor_core]") {
    Circuit c(2);
    c.append(LocalGate{{1}, pauli_x()});
    const StateVec out = apply_circuit(c, StateVec::zero(2));
    CHECK(std::abs(out[2] - 1.0) < 1e-15);
    CHECK(std::abs(embed_gate(c.gates()[0], 2)(2, 0) - 1.0) < 1e-15);
}

TEST_CASE("embed_gate matches the bit-reindexing oracle", "[tensor_core]") {
    oracle::TestRng rng(11);
    SECTION("two-qubit gate on positions (0, 2)") {
        const Gate g = LocalGate{{0, 2}, rng.unitary(4)};
        CHECK((embed_gate(g, 3) - oracle::brute_embed(g, 3)).norm() < 1e-12);
    }
    SECTION("reversed positions (2, 0)") {
        const Gate g = LocalGate{{2, 0}, rng.unitary(4)};
        CHECK((embed_gate(g, 3) - oracle::brute_embed(g, 3)).norm() < 1e-12);
    }
    SECTION("random gates of every kind") {
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 1 + static_cast<int>(rng.below(4));
            const Gate g = oracle::random_gate(rng, n);
            const ComplexMatrix u = embed_gate(g, n);
            CHECK((u - oracle::brute_embed(g, n)).norm() < 1e-12);
            CHECK(unitarity_defect(u) <= 1e-8);
        }
    }
}

TEST_CASE("gate validation rejects malformed gates", "[tensor_core]") {
    Circuit c(2);
    CHECK_THROWS_AS(c.append(LocalGate{{2}, pauli_x()}), DomainError);
    CHECK_THROWS_AS(c.append(LocalGate{{0, 0}, ComplexMatrix::Identity(4, 4)}), DomainError);
    CHECK_THROWS_AS(c.append(LocalGate{{0}, 2.0 * pauli_x()}), DomainError);
    CHECK_THROWS_AS(c.append(LocalGate{{0}, ComplexMatrix::Identity(4, 4)}), DomainError);
    CHECK_THROWS_AS(c.append(ControlledGate{{{0, true}}, 0, pauli_x()}), DomainError);
    CHECK_THROWS_AS(c.append(ControlledGate{{{-1, true}}, 1, pauli_x()}), DomainError);
    CHECK(c.empty());
}

TEST_CASE("apply_circuit basics", "[tensor_core]") {
    oracle::TestRng rng(12);
    const StateVec s = rng.state(3);
    CHECK((apply_circuit(Circuit(3), s).amplitudes() - s.amplitudes()).norm() == 0.0);

    Circuit phase(1);
    phase.append(PhaseOnZero{std::numbers::pi});
    const StateVec out = apply_circuit(phase, StateVec::zero(1));
    CHECK(std::abs(out[0] + 1.0) < 1e-15);

    CHECK_THROWS_AS(apply_circuit(Circuit(2), StateVec::zero(3)), DomainError);
}

TEST_CASE("apply_circuit agrees with the dense-matrix oracle", "[tensor_core]") {
    oracle::TestRng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        const Circuit c = oracle::random_circuit(rng, n, 3);
        const StateVec s = rng.state(n);
        const ComplexVector expect = oracle::brute_circuit(c) * s.amplitudes();
        const StateVec got = apply_circuit(c, s);
        CHECK((got.amplitudes() - expect).norm() <= 1e-10);
        CHECK(std::abs(got.amplitudes().norm() - 1.0) <= 1e-9);
        CHECK((circuit_to_matrix(c) * s.amplitudes() - got.amplitudes()).norm() <= 1e-9);
    }
}

TEST_CASE("circuit_to_matrix", "[tensor_core]") {
    CHECK(circuit_to_matrix(Circuit(1)).isApprox(ComplexMatrix::Identity(2, 2)));
    Circuit x(1);
    x.append(LocalGate{{0}, pauli_x()});
    CHECK((circuit_to_matrix(x) - pauli_x()).norm() == 0.0);

    oracle::TestRng rng(14);
    const Circuit c = oracle::random_circuit(rng, 2, 4);
    const ComplexMatrix u = circuit_to_matrix(c);
    CHECK(unitarity_defect(u) <= 1e-8);
    for (std::size_t b = 0; b < 4; ++b) {
        const StateVec col = apply_circuit(c, StateVec::basis(2, b));
        CHECK((u.col(static_cast<Eigen::Index>(b)) - col.amplitudes()).norm() <= 1e-12);
    }
    CHECK_THROWS_AS(circuit_to_matrix(Circuit(11)), DomainError);
}

TEST_CASE("circuit_dagger", "[tensor_core]") {
    CHECK(circuit_dagger(Circuit(2)).empty());

    Circuit p(1);
    p.append(PhaseOnZero{0.7});
    const Circuit d = circuit_dagger(p);
    REQUIRE(d.size() == 1);
    CHECK(std::get<PhaseOnZero>(d.gates()[0]).w == -0.7);

    oracle::TestRng rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        Circuit c = oracle::random_circuit(rng, n, 6);
        const StateVec s = rng.state(n);
        c.append(circuit_dagger(c));
        CHECK((apply_circuit(c, s).amplitudes() - s.amplitudes()).norm() <= 1e-9);
    }
}

TEST_CASE("measure_prefix", "[tensor_core]") {
    const Distribution z = measure_prefix(StateVec::zero(3), 3);
    CHECK(z[0] == 1.0);
    for (std::size_t b = 1; b < 8; ++b) {
        CHECK(z[b] == 0.0);
    }

    ComplexVector plus(2);
    plus << 1.0, 1.0;
    const Distribution half = measure_prefix(StateVec::normalized(1, plus), 1);
    CHECK(half[0] == Approx(0.5).margin(1e-15));
    CHECK(half[1] == Approx(0.5).margin(1e-15));

    oracle::TestRng rng(16);
    const StateVec s = rng.state(4);
    const auto expect = oracle::brute_prefix(s.amplitudes(), 2);
    const Distribution got = measure_prefix(s, 2);
    for (std::size_t b = 0; b < 4; ++b) {
        CHECK(got[b] == Approx(expect[b]).margin(1e-14));
    }
    CHECK_THROWS_AS(measure_prefix(s, 0), DomainError);
    CHECK_THROWS_AS(measure_prefix(s, 5), DomainError);
}

TEST_CASE("measure_prefix marginalizes over the top measured bit", "[tensor_core]") {
    oracle::TestRng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(3));
        const StateVec s = rng.state(n);
        for (int l = 1; l < n; ++l) {
            const Distribution coarse = measure_prefix(s, l);
            const Distribution fine = measure_prefix(s, l + 1);
            const std::size_t half = std::size_t{1} << l;
            for (std::size_t b = 0; b < half; ++b) {
                CHECK(coarse[b] == Approx(fine[b] + fine[b + half]).margin(1e-14));
            }
        }
    }
}

TEST_CASE("Distribution clamps tiny negatives and rejects bad input", "[tensor_core]") {
    const Distribution d(1, {1.0 + 5e-13, -5e-13});
    CHECK(d[1] == 0.0);
    CHECK_THROWS_AS(Distribution(1, {1.1, -0.1}), DomainError);
    CHECK_THROWS_AS(Distribution(1, {0.5, 0.4}), DomainError);
}

TEST_CASE("StateVec invariants", "[tensor_core]") {
    ComplexVector v(2);
    v << 1.0, 1.0;
    CHECK_THROWS_AS(StateVec(1, v), DomainError);
    CHECK_THROWS_AS(StateVec(2, ComplexVector::Ones(2) / std::numbers::sqrt2), DomainError);
    CHECK_NOTHROW(StateVec::normalized(1, v));
    CHECK_THROWS_AS(StateVec::normalized(1, ComplexVector::Zero(2)), DomainError);
}

TEST_CASE("cost model defaults", "[tensor_core]") {
    oracle::TestRng rng(18);
    Circuit c(4);
    c.append(LocalGate{{0, 1}, rng.unitary(4)});
    c.append(LocalGate{{0, 1, 2}, rng.unitary(8)});
    c.append(ControlledGate{{}, 0, hadamard()});
    c.append(ControlledGate{{{1, true}, {2, false}, {3, true}}, 0, hadamard()});
    c.append(PhaseOnZero{0.3});
    const CircuitCost cost = c.cost();
    CHECK(cost.primitive_count == 5);
    CHECK(cost.two_qubit_equiv == 1.0 + 8.0 + 1.0 + 3.0 + 16.0);
    CHECK(c.count<ControlledGate>() == 2);

    const CircuitCost flat = c.cost([](const Gate &, int) { return 1.0; });
    CHECK(flat.two_qubit_equiv == 5.0);
}
