// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "mgqmc/rng.hpp"
#include "mgqmc/slater.hpp"
#include "mgqmc/statevector.hpp"

namespace mgqmc::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(MGQMC_FIXTURE_DIR) + "/" + name;
}

inline MatrixXcd random_complex_matrix(int rows, int cols, RandomStream& rng) {
    MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = cdouble(rng.gaussian(), rng.gaussian());
    return m;
}

inline MatrixXcd random_antisymmetric(int dim, RandomStream& rng) {
    const MatrixXcd m = random_complex_matrix(dim, dim, rng);
    return m - m.transpose();
}

inline SlaterDeterminant random_determinant(int n, int zeta, RandomStream& rng) {
    return SlaterDeterminant(n, random_complex_matrix(n, zeta, rng));
}

/// Random normalized state vector, for oracle-side overlaps.
inline StateVector random_state(int n, RandomStream& rng) {
    StateVector psi(n);
    for (int64_t i = 0; i < psi.dim(); ++i)
        psi.amplitudes()(i) = cdouble(rng.gaussian(), rng.gaussian());
    psi.normalize();
    return psi;
}

}  // namespace mgqmc::testing
