// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "mgqmc/fci.hpp"
#include "mgqmc/hamiltonian.hpp"

using namespace mgqmc;
using mgqmc::testing::fixture_path;

namespace {

int index_of(const std::vector<bitdet::Mask>& basis, bitdet::Mask m) {
    const auto it = std::find(basis.begin(), basis.end(), m);
    REQUIRE(it != basis.end());
    return static_cast<int>(it - basis.begin());
}

}  // namespace

TEST_CASE("integral and qubit sector matrices agree", "[fci]") {
    for (const char* name : {"h2_sto3g_r0.75.fcidump", "nv_effective_4q.fcidump"}) {
        const MolecularHamiltonian ham = load_fcidump(fixture_path(name));
        const MatrixXd direct = sector_matrix(ham, ham.n_electrons);
        const MatrixXcd mapped = sector_matrix(jordan_wigner_map(ham), ham.n_electrons);
        REQUIRE((mapped - direct.cast<cdouble>()).cwiseAbs().maxCoeff() < 1e-10);
        REQUIRE((direct - direct.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("molecular ground state energy matches the external value", "[fci]") {
    const MolecularHamiltonian ham = load_fcidump(fixture_path("h2_sto3g_r0.75.fcidump"));
    const FciSolution sol = exact_ground_state(ham);
    REQUIRE(sol.energy == Catch::Approx(-1.1371170599303162).margin(2e-9));
    REQUIRE(sol.residual <= 1e-9);

    // Two-determinant structure: cos(t/2) on the doubly occupied bonding
    // orbital (modes 0, 1), -sin(t/2) on the antibonding pair (modes 2, 3).
    const double t = 0.22966611796794895;
    REQUIRE(sol.ground_vector(index_of(sol.basis, 3)).real() ==
            Catch::Approx(std::cos(t / 2)).margin(1e-9));
    REQUIRE(sol.ground_vector(index_of(sol.basis, 12)).real() ==
            Catch::Approx(-std::sin(t / 2)).margin(1e-9));
    REQUIRE(sol.ground_vector.imag().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("lattice ground state is an open-shell singlet", "[fci]") {
    const MolecularHamiltonian ham = load_fcidump(fixture_path("nv_effective_4q.fcidump"));
    const FciSolution sol = exact_ground_state(ham);
    REQUIRE(sol.energy == Catch::Approx(-0.004326992426).margin(2e-9));

    const VectorXcd& v = sol.ground_vector;
    const int i0110 = index_of(sol.basis, 6);
    const int i1001 = index_of(sol.basis, 9);
    const int i1100 = index_of(sol.basis, 3);
    const int i0011 = index_of(sol.basis, 12);
    REQUIRE(std::abs(v(i0110) + v(i1001)) < 1e-10);       // singlet combination
    REQUIRE(std::abs(v(i1100) - v(i0011)) < 1e-10);       // symmetric closed shells
    REQUIRE(std::abs(v(index_of(sol.basis, 5))) < 1e-10);  // no spin-aligned content
    REQUIRE(std::abs(v(index_of(sol.basis, 10))) < 1e-10);
    REQUIRE(std::abs(v(i0110)) > 0.5);
}

TEST_CASE("phase convention makes the dominant amplitude real positive", "[fci]") {
    const MolecularHamiltonian ham = load_fcidump(fixture_path("h2_sto3g_r0.75.fcidump"));
    const FciSolution sol = exact_ground_state(jordan_wigner_map(ham), ham.n_electrons);
    int top = 0;
    sol.ground_vector.cwiseAbs().maxCoeff(&top);
    REQUIRE(sol.ground_vector(top).real() > 0.0);
    REQUIRE(std::abs(sol.ground_vector(top).imag()) < 1e-12);
    REQUIRE(sol.energy == Catch::Approx(-1.1371170599303162).margin(2e-9));
}

TEST_CASE("trial-state quadratic forms reproduce external energies", "[fci]") {
    SECTION("molecular fixture, detuned rotation") {
        const MolecularHamiltonian ham = load_fcidump(fixture_path("h2_sto3g_r0.75.fcidump"));
        const MatrixXd m = sector_matrix(ham, 2);
        const std::vector<bitdet::Mask> basis = bitdet::enumerate_sector(4, 2);
        VectorXd x = VectorXd::Zero(static_cast<int>(basis.size()));
        const double theta = 0.57;
        x(index_of(basis, 3)) = std::cos(theta / 2);
        x(index_of(basis, 12)) = -std::sin(theta / 2);
        REQUIRE(x.dot(m * x) == Catch::Approx(-1.0913199583994653).margin(1e-9));
    }
    SECTION("lattice fixture, open-shell singlet") {
        const MolecularHamiltonian ham = load_fcidump(fixture_path("nv_effective_4q.fcidump"));
        const MatrixXd m = sector_matrix(ham, 2);
        const std::vector<bitdet::Mask> basis = bitdet::enumerate_sector(4, 2);
        VectorXd x = VectorXd::Zero(static_cast<int>(basis.size()));
        x(index_of(basis, 9)) = 1.0 / std::sqrt(2.0);
        x(index_of(basis, 6)) = -1.0 / std::sqrt(2.0);
        REQUIRE(x.dot(m * x) == Catch::Approx(0.032).margin(1e-9));
    }
}

TEST_CASE("resource limits are enforced", "[fci]") {
    QubitHamiltonian big;
    big.n = 18;
    REQUIRE_THROWS_AS(exact_ground_state(big, 2), ResourceError);

    const MolecularHamiltonian ham = load_fcidump(fixture_path("h2_sto3g_r0.75.fcidump"));
    REQUIRE_THROWS_AS(exact_ground_state(jordan_wigner_map(ham), 2, 3), ResourceError);
    REQUIRE_THROWS_AS(sector_matrix(jordan_wigner_map(ham), 5), ConfigError);
}
