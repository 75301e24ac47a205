// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "mgqmc/trial_backend.hpp"

using namespace mgqmc;
using mgqmc::testing::random_complex_matrix;

TEST_CASE("stored orbitals are orthonormal with positive diagonal gauge", "[slater]") {
    RandomStream rng(51, "slater");
    const SlaterDeterminant det = mgqmc::testing::random_determinant(5, 3, rng);
    const MatrixXcd& v = det.orbitals();
    REQUIRE((v.adjoint() * v - MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("occupation determinants have unit amplitude on their mask", "[slater]") {
    const SlaterDeterminant det = SlaterDeterminant::from_occupation(4, 0b1010);
    REQUIRE(std::abs(det.amplitude(0b1010) - 1.0) < 1e-14);
    REQUIRE(std::abs(det.amplitude(0b0110)) < 1e-14);
    REQUIRE(det.amplitude(0b0111) == cdouble(0.0, 0.0));  // wrong particle count
}

TEST_CASE("statevector expansion reproduces the minor amplitudes", "[slater]") {
    RandomStream rng(52, "slater");
    const SlaterDeterminant det = mgqmc::testing::random_determinant(4, 2, rng);
    const StateVector psi = det.to_statevector();
    REQUIRE(psi.norm() == Catch::Approx(1.0).epsilon(1e-12));
    for (bitdet::Mask m : bitdet::enumerate_sector(4, 2)) {
        const cdouble amp = psi.amplitude(orbital_mask_to_basis_index(4, m));
        REQUIRE(std::abs(amp - det.amplitude(m)) < 1e-12);
    }
}

TEST_CASE("unitary completion extends the orbitals", "[slater]") {
    RandomStream rng(53, "slater");
    const SlaterDeterminant det = mgqmc::testing::random_determinant(5, 2, rng);
    const MatrixXcd u = det.unitary_completion();
    REQUIRE((u.adjoint() * u - MatrixXcd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-10);
    REQUIRE((u.leftCols(2) - det.orbitals()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("state overlap matches the dense inner product", "[slater]") {
    RandomStream rng(54, "slater");
    const SlaterDeterminant det = mgqmc::testing::random_determinant(4, 2, rng);
    const StateVector trial = mgqmc::testing::random_state(4, rng);
    const cdouble direct = trial.inner(det.to_statevector());
    REQUIRE(std::abs(overlap_with_state(trial, det) - direct) < 1e-12);
}

TEST_CASE("column factorization preserves multilinear amplitudes", "[slater]") {
    RandomStream rng(55, "slater");
    for (int trial = 0; trial < 10; ++trial) {
        const MatrixXcd cols = random_complex_matrix(4, 2, rng);
        const ScaledDeterminant sd = factorize_columns(4, cols);
        REQUIRE(sd.scale > 0.0);
        for (bitdet::Mask m : bitdet::enumerate_sector(4, 2)) {
            const cdouble raw = occupation_minor(cols, m);
            const cdouble factored = sd.scale * sd.det.amplitude(m);
            REQUIRE(std::abs(raw - factored) < 1e-10 * std::max(1.0, std::abs(raw)));
        }
    }
}

TEST_CASE("rank-deficient column sets are rejected", "[slater]") {
    MatrixXcd cols = MatrixXcd::Zero(4, 2);
    cols.col(0).setOnes();
    cols.col(1).setOnes();
    REQUIRE_THROWS_AS(factorize_columns(4, cols), NumericError);
    REQUIRE_THROWS_AS(SlaterDeterminant(4, cols), NumericError);
}
