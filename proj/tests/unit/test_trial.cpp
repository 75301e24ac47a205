// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "mgqmc/trial.hpp"

using namespace mgqmc;

TEST_CASE("reference determinant helpers", "[trial]") {
    REQUIRE(reference_mask(2) == 3u);
    REQUIRE(reference_mask(3) == 7u);
    REQUIRE(reference_basis_index(4, 2) == 12u);
    REQUIRE(reference_basis_index(6, 2) == 48u);
    REQUIRE(reference_basis_index(4, 4) == 15u);
}

TEST_CASE("double-excitation ansatz rotates the closed-shell pair", "[trial]") {
    const double theta = 0.57;
    const Circuit c = build_trial_circuit({"h2_de", 4, 2, theta});
    const StateVector psi = trial_state(c, 2);
    REQUIRE(std::abs(psi.amplitude(12) - std::cos(theta / 2)) < 1e-12);
    REQUIRE(std::abs(psi.amplitude(3) + std::sin(theta / 2)) < 1e-12);
    double rest = 0.0;
    for (std::uint64_t b = 0; b < 16; ++b)
        if (b != 12 && b != 3) rest += std::abs(psi.amplitude(b));
    REQUIRE(rest < 1e-12);
}

TEST_CASE("swapped ansatz rotates the open-shell pair", "[trial]") {
    const double theta = 0.9;
    const Circuit c = build_trial_circuit({"nv_de", 4, 2, theta});
    const StateVector psi = trial_state(c, 2);
    REQUIRE(std::abs(psi.amplitude(9) - std::cos(theta / 2)) < 1e-12);
    REQUIRE(std::abs(psi.amplitude(6) + std::sin(theta / 2)) < 1e-12);

    const StateVector singlet = trial_state(build_trial_circuit({"nv_de", 4, 2, M_PI / 2}), 2);
    REQUIRE(std::abs(singlet.amplitude(9) - 1.0 / std::sqrt(2.0)) < 1e-12);
    REQUIRE(std::abs(singlet.amplitude(6) + 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("trial circuits fix the vacuum", "[trial]") {
    for (const char* name : {"h2_de", "nv_de"}) {
        const Circuit c = build_trial_circuit({name, 4, 2, 0.7});
        const StateVector vac = c.run(StateVector(4));
        REQUIRE(std::abs(vac.amplitude(0) - 1.0) < 1e-12);
        REQUIRE_NOTHROW(validate_trial_circuit(c, 2));
    }
}

TEST_CASE("invalid trial circuits are rejected", "[trial]") {
    Circuit moves_vacuum(4);
    moves_vacuum.x(0);
    REQUIRE_THROWS_AS(validate_trial_circuit(moves_vacuum, 2), ConfigError);

    Circuit leaks(4);
    leaks.cnot(0, 1);  // fixes the vacuum but maps |1100> to |1000>
    REQUIRE_THROWS_AS(validate_trial_circuit(leaks, 2), ConfigError);

    const Circuit ok = build_trial_circuit({"h2_de", 4, 2, 0.3});
    REQUIRE_THROWS_AS(validate_trial_circuit(ok, 0), ConfigError);
    REQUIRE_THROWS_AS(validate_trial_circuit(ok, 5), ConfigError);
}

TEST_CASE("ansatz specs are validated", "[trial]") {
    REQUIRE_THROWS_AS(build_trial_circuit({"h2_de", 6, 2, 0.3}), ConfigError);
    REQUIRE_THROWS_AS(build_trial_circuit({"h2_de", 4, 4, 0.3}), ConfigError);
    REQUIRE_THROWS_AS(build_trial_circuit({"unknown", 4, 2, 0.3}), ConfigError);
}

TEST_CASE("preparation circuit makes the vacuum trial superposition", "[trial]") {
    const double theta = 0.57;
    const Circuit trial = build_trial_circuit({"h2_de", 4, 2, theta});
    const StateVector psi = prepare_superposition_state(trial, 2);
    const double r = 1.0 / std::sqrt(2.0);
    REQUIRE(std::abs(psi.amplitude(0) - r) < 1e-12);
    REQUIRE(std::abs(psi.amplitude(12) - r * std::cos(theta / 2)) < 1e-12);
    REQUIRE(std::abs(psi.amplitude(3) + r * std::sin(theta / 2)) < 1e-12);

    const Circuit prep = build_preparation_circuit(trial, 2);
    REQUIRE(prep.gates().size() == trial.gates().size() + 2);  // h plus one fan-out cnot
}

TEST_CASE("superposition prefix validates particle count", "[trial]") {
    REQUIRE_THROWS_AS(superposition_prefix(4, 0), ConfigError);
    REQUIRE_THROWS_AS(superposition_prefix(4, 5), ConfigError);
    const StateVector half = superposition_prefix(4, 2).run(StateVector(4));
    REQUIRE(std::abs(half.amplitude(0) - 1.0 / std::sqrt(2.0)) < 1e-12);
    REQUIRE(std::abs(half.amplitude(12) - 1.0 / std::sqrt(2.0)) < 1e-12);
}
