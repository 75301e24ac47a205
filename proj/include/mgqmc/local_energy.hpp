// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "mgqmc/cholesky.hpp"
#include "mgqmc/slater.hpp"

namespace mgqmc {

/// Pairs (i, j) with lo <= i < j < hi, lexicographic. Fixes the row/column
/// order of the double-excitation overlap table.
inline std::vector<std::pair<int, int>> ascending_pairs(int lo, int hi) {
    std::vector<std::pair<int, int>> out;
    for (int i = lo; i < hi; ++i)
        for (int j = i + 1; j < hi; ++j) out.emplace_back(i, j);
    return out;
}

/// Trial overlaps with a walker's own orbital determinants: the reference
/// (the walker itself), singles with column i replaced in place by virtual
/// column a, and doubles with columns i, j replaced by a, b (i < j, a < b).
struct OverlapTable {
    cdouble ref{0.0, 0.0};
    /// (n - zeta) x zeta, indexed (a - zeta, i).
    MatrixXcd singles;
    /// Virtual pairs (a < b) by occupied pairs (i < j), both in
    /// ascending_pairs order.
    MatrixXcd doubles;
};

/// One- and two-body integrals expressed in the walker's orthonormal basis
/// u (an isometry completion, first zeta columns = walker orbitals):
/// hbar = u^dag h u and lbar_g = u^dag L_g u, so that
/// vbar(p,q,r,s) = sum_g lbar_g(p,r) lbar_g(q,s).
struct RotatedIntegrals {
    MatrixXcd u;
    MatrixXcd hbar;
    std::vector<MatrixXcd> lbar;
};

inline RotatedIntegrals rotate_integrals(const MatrixXcd& u, const MatrixXd& h,
                                         const std::vector<MatrixXd>& l) {
    RotatedIntegrals out;
    out.u = u;
    out.hbar = u.adjoint() * h * u;
    out.lbar.reserve(l.size());
    for (const MatrixXd& lg : l) out.lbar.push_back(u.adjoint() * lg * u);
    return out;
}

/// Mixed estimator <T|A|phi>/<T|phi> of a one-body operator with matrix
/// abar already rotated into the walker basis. The resolution of the
/// identity truncates exactly after single excitations.
inline cdouble mixed_one_body(const MatrixXcd& abar, const OverlapTable& table, int zeta) {
    const int n = static_cast<int>(abar.rows());
    cdouble num = abar.topLeftCorner(zeta, zeta).trace() * table.ref;
    for (int a = zeta; a < n; ++a)
        for (int i = 0; i < zeta; ++i) num += abar(a, i) * table.singles(a - zeta, i);
    return num / table.ref;
}

/// Local energy <T|H|phi>/<T|phi> assembled from the Slater-Condon matrix
/// elements of the rotated Hamiltonian against the backend's overlap table.
inline cdouble local_energy(double h0, const RotatedIntegrals& ri, const OverlapTable& table,
                            int zeta) {
    const int n = static_cast<int>(ri.hbar.rows());
    const int n_virt = n - zeta;

    cdouble e_ref = h0 + ri.hbar.topLeftCorner(zeta, zeta).trace();
    for (const MatrixXcd& lg : ri.lbar) {
        const auto occ = lg.topLeftCorner(zeta, zeta);
        const cdouble t = occ.trace();
        e_ref += 0.5 * (t * t - (occ * occ).trace());
    }

    cdouble num = e_ref * table.ref;

    MatrixXcd m_singles = ri.hbar.bottomLeftCorner(n_virt, zeta);
    for (const MatrixXcd& lg : ri.lbar) {
        const cdouble t = lg.topLeftCorner(zeta, zeta).trace();
        m_singles += t * lg.bottomLeftCorner(n_virt, zeta);
        m_singles -= lg.bottomLeftCorner(n_virt, zeta) * lg.topLeftCorner(zeta, zeta);
    }
    num += m_singles.cwiseProduct(table.singles).sum();

    const auto opairs = ascending_pairs(0, zeta);
    const auto vpairs = ascending_pairs(zeta, n);
    for (size_t vp = 0; vp < vpairs.size(); ++vp)
        for (size_t op = 0; op < opairs.size(); ++op) {
            const auto [a, b] = vpairs[vp];
            const auto [i, j] = opairs[op];
            cdouble m_d = 0.0;
            for (const MatrixXcd& lg : ri.lbar)
                m_d += lg(a, i) * lg(b, j) - lg(a, j) * lg(b, i);
            num += m_d * table.doubles(static_cast<int>(vp), static_cast<int>(op));
        }

    return num / table.ref;
}

}  // namespace mgqmc
