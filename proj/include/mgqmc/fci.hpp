// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "mgqmc/jordan_wigner.hpp"

namespace mgqmc {

struct FciSolution {
    double energy = 0.0;
    /// Occupation masks spanning the fixed-particle-number sector, ascending.
    std::vector<bitdet::Mask> basis;
    VectorXcd ground_vector;
    double residual = 0.0;
};

namespace detail {

inline std::vector<bitdet::Mask> sector_basis(int n, int zeta, int dim_cap) {
    if (n > 16) throw ResourceError("exact diagonalization capped at n = 16");
    if (zeta < 0 || zeta > n) throw ConfigError("particle number outside [0, n]");
    std::vector<bitdet::Mask> basis = bitdet::enumerate_sector(n, zeta);
    if (static_cast<int>(basis.size()) > dim_cap)
        throw ResourceError("sector dimension " + std::to_string(basis.size()) +
                            " exceeds cap " + std::to_string(dim_cap));
    return basis;
}

inline int basis_index(const std::vector<bitdet::Mask>& basis, bitdet::Mask m) {
    const auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || *it != m) return -1;
    return static_cast<int>(it - basis.begin());
}

template <typename Matrix>
FciSolution lowest_eigenpair(const Matrix& h, std::vector<bitdet::Mask> basis) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) throw NumericError("sector eigensolver failed");
    FciSolution out;
    out.basis = std::move(basis);
    out.energy = solver.eigenvalues()(0);
    out.ground_vector = solver.eigenvectors().col(0).template cast<cdouble>();
    int top = 0;
    out.ground_vector.cwiseAbs().maxCoeff(&top);
    const cdouble pivot = out.ground_vector(top);
    out.ground_vector *= std::abs(pivot) / pivot;
    out.residual =
        (h.template cast<cdouble>() * out.ground_vector - out.energy * out.ground_vector).norm();
    if (out.residual > 1e-9) throw NumericError("eigenpair residual exceeds 1e-9");
    return out;
}

}  // namespace detail

/// Matrix of the Pauli-term Hamiltonian restricted to the Hamming-weight
/// zeta sector. Pauli letters act on occupation bit b as X: flip,
/// Y: flip with phase i(-1)^b, Z: phase (-1)^b.
inline MatrixXcd sector_matrix(const QubitHamiltonian& ham, int zeta, int dim_cap = 4096) {
    const std::vector<bitdet::Mask> basis = detail::sector_basis(ham.n, zeta, dim_cap);
    const int dim = static_cast<int>(basis.size());
    MatrixXcd h = MatrixXcd::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (const auto& [str, c] : ham.terms.terms()) {
            bitdet::Mask image = basis[static_cast<size_t>(j)];
            cdouble phase = 1.0;
            for (int q = 0; q < ham.n; ++q) {
                const int b = static_cast<int>((image >> q) & 1u);
                switch (str.op(q)) {
                    case PauliString::I: break;
                    case PauliString::X: image ^= bitdet::Mask{1} << q; break;
                    case PauliString::Y:
                        phase *= b ? cdouble(0, -1) : cdouble(0, 1);
                        image ^= bitdet::Mask{1} << q;
                        break;
                    case PauliString::Z:
                        if (b) phase = -phase;
                        break;
                }
            }
            const int i = detail::basis_index(basis, image);
            if (i >= 0) h(i, j) += c * phase;
        }
    }
    return h;
}

/// Same sector matrix built directly from the second-quantized integrals,
/// bypassing the Pauli representation.
inline MatrixXd sector_matrix(const MolecularHamiltonian& ham, int zeta, int dim_cap = 4096) {
    const std::vector<bitdet::Mask> basis = detail::sector_basis(ham.n, zeta, dim_cap);
    const int dim = static_cast<int>(basis.size());
    MatrixXd h = MatrixXd::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        std::map<bitdet::Mask, double> acc;
        bitdet::apply_one_body(ham.h, basis[static_cast<size_t>(j)], 1.0, acc);
        bitdet::apply_two_body(ham.v, basis[static_cast<size_t>(j)], 1.0, acc);
        acc[basis[static_cast<size_t>(j)]] += ham.h0;
        for (const auto& [mask, value] : acc) {
            const int i = detail::basis_index(basis, mask);
            if (i >= 0) h(i, j) += value;
        }
    }
    return h;
}

/// Lowest eigenpair of the Pauli-term Hamiltonian on the zeta-particle
/// sector; deterministic up to the fixed phase convention (largest
/// amplitude real positive).
inline FciSolution exact_ground_state(const QubitHamiltonian& ham, int zeta, int dim_cap = 4096) {
    std::vector<bitdet::Mask> basis = detail::sector_basis(ham.n, zeta, dim_cap);
    return detail::lowest_eigenpair(sector_matrix(ham, zeta, dim_cap), std::move(basis));
}

/// Lowest eigenpair built from the integrals directly; this is the
/// reference solver used for golden energies.
inline FciSolution exact_ground_state(const MolecularHamiltonian& ham, int dim_cap = 4096) {
    std::vector<bitdet::Mask> basis = detail::sector_basis(ham.n, ham.n_electrons, dim_cap);
    return detail::lowest_eigenpair(sector_matrix(ham, ham.n_electrons, dim_cap),
                                    std::move(basis));
}

}  // namespace mgqmc
