// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "mgqmc/noise.hpp"

using namespace mgqmc;

namespace {

Circuit small_prep() {
    Circuit prep(2);
    prep.h(0).cnot(0, 1);
    return prep;
}

double total_counts_distance(const CountsMap& counts, const VectorXd& probs, int shots) {
    double tv = 0.0;
    for (int64_t b = 0; b < probs.size(); ++b) {
        const auto it = counts.find(static_cast<uint64_t>(b));
        const double freq = it == counts.end() ? 0.0 : static_cast<double>(it->second) / shots;
        tv += 0.5 * std::abs(freq - probs(b));
    }
    return tv;
}

}  // namespace

TEST_CASE("noiseless sampling follows the born distribution", "[noise]") {
    const Circuit prep = small_prep();
    Circuit main(2);
    main.ry(0, 0.4);
    PauliNoiseModel noiseless;
    RandomStream rng(21, "shots");
    const int shots = 50000;
    const CountsMap counts = sample_counts(prep, main, shots, noiseless, rng);
    const VectorXd probs = noisy_outcome_distribution(prep, main, noiseless);
    REQUIRE(total_counts_distance(counts, probs, shots) < 0.01);
}

TEST_CASE("gate pauli noise trajectories match the dense channel", "[noise]") {
    const Circuit prep = small_prep();
    Circuit main(2);
    main.ry(0, 0.9).cnot(1, 0).h(1);
    PauliNoiseModel noise;
    noise.p1 = {0.02, 0.05, 0.03};
    noise.p2 = {0.04, 0.01, 0.02};
    RandomStream rng(22, "shots");
    const int shots = 60000;
    const CountsMap counts = sample_counts(prep, main, shots, noise, rng);
    const VectorXd probs = noisy_outcome_distribution(prep, main, noise);
    REQUIRE(total_counts_distance(counts, probs, shots) < 0.012);
}

TEST_CASE("state preparation noise is gated by its toggle", "[noise]") {
    // Bell pair followed by its disentangler, so every X insertion point
    // lands on a distinct output bitstring and both branches have closed
    // forms: main-only noise gives {.81,.09,.09,.01}; enabling preparation
    // noise mixes 0.18 of the odd-parity Bell state in and shifts the
    // distribution to {.6804,.2196,.0756,.0244}.
    const Circuit prep = small_prep();
    Circuit main(2);
    main.cnot(0, 1).h(0);
    PauliNoiseModel noise;
    noise.p1 = {0.1, 0.0, 0.0};
    noise.p2 = {0.1, 0.0, 0.0};

    const VectorXd clean_prep = noisy_outcome_distribution(prep, main, noise);
    REQUIRE(clean_prep(0b00) == Catch::Approx(0.81).epsilon(1e-12));
    REQUIRE(clean_prep(0b01) == Catch::Approx(0.09).epsilon(1e-12));
    REQUIRE(clean_prep(0b10) == Catch::Approx(0.09).epsilon(1e-12));
    REQUIRE(clean_prep(0b11) == Catch::Approx(0.01).epsilon(1e-12));

    noise.state_preparation_noise = true;
    const VectorXd noisy_prep = noisy_outcome_distribution(prep, main, noise);
    REQUIRE(noisy_prep(0b00) == Catch::Approx(0.6804).epsilon(1e-12));
    REQUIRE(noisy_prep(0b01) == Catch::Approx(0.2196).epsilon(1e-12));
    REQUIRE(noisy_prep(0b10) == Catch::Approx(0.0756).epsilon(1e-12));
    REQUIRE(noisy_prep(0b11) == Catch::Approx(0.0244).epsilon(1e-12));
}

TEST_CASE("readout flips mix the outcome distribution", "[noise]") {
    Circuit prep(2);  // stays |00>
    Circuit main(2);
    PauliNoiseModel noise;
    noise.readout_flip = 0.25;
    const VectorXd probs = noisy_outcome_distribution(prep, main, noise);
    REQUIRE(probs(0b00) == Catch::Approx(0.75 * 0.75).epsilon(1e-12));
    REQUIRE(probs(0b01) == Catch::Approx(0.75 * 0.25).epsilon(1e-12));
    REQUIRE(probs(0b11) == Catch::Approx(0.25 * 0.25).epsilon(1e-12));

    RandomStream rng(23, "shots");
    const CountsMap counts = sample_counts(prep, main, 40000, noise, rng);
    REQUIRE(total_counts_distance(counts, probs, 40000) < 0.012);
}

TEST_CASE("global depolarizing pulls outcomes toward uniform", "[noise]") {
    Circuit prep(2);
    Circuit main(2);
    PauliNoiseModel noise;
    noise.depolarizing_pre_measurement = 1.0;
    const VectorXd probs = noisy_outcome_distribution(prep, main, noise);
    for (int64_t b = 0; b < 4; ++b) REQUIRE(probs(b) == Catch::Approx(0.25).epsilon(1e-12));

    RandomStream rng(24, "shots");
    const CountsMap counts = sample_counts(prep, main, 40000, noise, rng);
    REQUIRE(total_counts_distance(counts, probs, 40000) < 0.012);
}

TEST_CASE("noise model validation rejects bad rates", "[noise]") {
    PauliNoiseModel bad;
    bad.p1 = {0.6, 0.3, 0.3};
    REQUIRE_THROWS_AS(bad.validate(), ConfigError);
    bad.p1 = {-0.1, 0.0, 0.0};
    REQUIRE_THROWS_AS(bad.validate(), ConfigError);
    bad.p1 = {0.0, 0.0, 0.0};
    bad.readout_flip = 1.5;
    REQUIRE_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("coherent overrotation falls outside the dense pauli oracle", "[noise]") {
    PauliNoiseModel noise;
    noise.coherent_overrotation = 0.05;
    REQUIRE_THROWS_AS(noisy_outcome_distribution(small_prep(), Circuit(2), noise), ConfigError);
}
