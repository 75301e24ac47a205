// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "mgqmc/pauli.hpp"

using namespace mgqmc;

TEST_CASE("single-qubit products follow the multiplication table", "[pauli]") {
    using Op = PauliString::Op;
    auto [pxy, xy] = pauli_mul_1q(Op::X, Op::Y);
    REQUIRE(xy == Op::Z);
    REQUIRE(pxy == cdouble(0.0, 1.0));
    auto [pyx, yx] = pauli_mul_1q(Op::Y, Op::X);
    REQUIRE(yx == Op::Z);
    REQUIRE(pyx == cdouble(0.0, -1.0));
    auto [pzz, zz] = pauli_mul_1q(Op::Z, Op::Z);
    REQUIRE(zz == Op::I);
    REQUIRE(pzz == cdouble(1.0, 0.0));
}

TEST_CASE("string products agree with dense matrix products", "[pauli]") {
    const char* words[] = {"XYZ", "ZZI", "IYX", "XXX", "YIZ"};
    for (const char* wa : words)
        for (const char* wb : words) {
            const PauliString a(wa), b(wb);
            auto [phase, ab] = pauli_mul(a, b);
            const MatrixXcd dense = a.to_dense() * b.to_dense();
            REQUIRE((dense - phase * ab.to_dense()).cwiseAbs().maxCoeff() < 1e-14);
        }
}

TEST_CASE("majorana strings are hermitian and square to identity", "[pauli]") {
    const int n = 3;
    for (int mu = 0; mu < 2 * n; ++mu) {
        const MatrixXcd g = majorana_string(n, mu).to_dense();
        REQUIRE((g - g.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
        REQUIRE((g * g - MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("majorana strings anticommute pairwise", "[pauli]") {
    const int n = 3;
    for (int mu = 0; mu < 2 * n; ++mu)
        for (int nu = 0; nu < mu; ++nu) {
            const MatrixXcd a = majorana_string(n, mu).to_dense();
            const MatrixXcd b = majorana_string(n, nu).to_dense();
            REQUIRE((a * b + b * a).cwiseAbs().maxCoeff() < 1e-14);
        }
}

TEST_CASE("polynomials merge duplicate terms and prune small ones", "[pauli]") {
    PauliPolynomial poly;
    poly.add(PauliString("XZ"), cdouble(0.5, 0.0));
    poly.add(PauliString("XZ"), cdouble(0.25, 0.0));
    poly.add(PauliString("YY"), cdouble(1e-16, 0.0));
    poly.prune();
    REQUIRE(poly.terms().size() == 1);
    REQUIRE(poly.terms().begin()->second == cdouble(0.75, 0.0));

    const MatrixXcd dense = poly.to_dense(2);
    const MatrixXcd expected = 0.75 * PauliString("XZ").to_dense();
    REQUIRE((dense - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("invalid pauli letters are rejected", "[pauli]") {
    REQUIRE_THROWS_AS(PauliString("XQ"), ConfigError);
}
