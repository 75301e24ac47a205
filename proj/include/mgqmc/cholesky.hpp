// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "mgqmc/hamiltonian.hpp"

namespace mgqmc {

/// Low-rank form of the two-body interaction,
///
///   v(p,q,r,s) = sum_g L^g(p,r) L^g(q,s),
///
/// together with the pieces the propagator consumes: the one-body matrix v0
/// that absorbs the normal-ordering correction and the mean-field shift, the
/// per-vector reference expectations t_g = <ref| sum_p L^g(p,p) n_p |ref>,
/// and the correspondingly shifted constant energy.
struct CholeskyFactorization {
    int n = 0;
    double tolerance = 0.0;
    std::vector<MatrixXd> vectors;
    std::vector<double> mf_shift;
    MatrixXd h_prime;
    MatrixXd v0;
    double h0_shifted = 0.0;

    int count() const { return static_cast<int>(vectors.size()); }

    /// Max-norm error of the reconstructed two-body tensor.
    double reconstruction_error(const bitdet::Tensor4<double>& v) const {
        double worst = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                for (int r = 0; r < n; ++r)
                    for (int s = 0; s < n; ++s) {
                        double acc = 0.0;
                        for (const MatrixXd& l : vectors) acc += l(p, r) * l(q, s);
                        worst = std::max(worst, std::abs(acc - v(p, q, r, s)));
                    }
        return worst;
    }
};

/// Pivoted incomplete Cholesky factorization of the pair matrix
/// M[(p,r)][(q,s)] = v(p,q,r,s), stopped once the residual diagonal falls
/// below tol. The reference state for the mean-field shift is the lowest
/// zeta-orbital determinant.
inline CholeskyFactorization cholesky_decompose(const MolecularHamiltonian& ham,
                                                double tol = 1e-8) {
    const int n = ham.n;
    const int dim = n * n;
    MatrixXd m(dim, dim);
    for (int p = 0; p < n; ++p)
        for (int r = 0; r < n; ++r)
            for (int q = 0; q < n; ++q)
                for (int s = 0; s < n; ++s) m(p * n + r, q * n + s) = ham.v(p, q, r, s);

    CholeskyFactorization out;
    out.n = n;
    out.tolerance = tol;
    VectorXd diag = m.diagonal();
    std::vector<VectorXd> columns;
    while (true) {
        int pivot = 0;
        const double d_max = diag.maxCoeff(&pivot);
        if (diag.minCoeff() < -tol)
            throw NumericError("two-body tensor is not positive semidefinite");
        if (d_max <= tol || static_cast<int>(columns.size()) == dim) break;
        VectorXd col = m.col(pivot);
        for (const VectorXd& prev : columns) col -= prev(pivot) * prev;
        col /= std::sqrt(d_max);
        diag -= col.cwiseProduct(col);
        columns.push_back(std::move(col));
    }
    for (const VectorXd& col : columns) {
        MatrixXd l(n, n);
        for (int p = 0; p < n; ++p)
            for (int r = 0; r < n; ++r) l(p, r) = col(p * n + r);
        out.vectors.push_back(std::move(l));
    }

    out.h_prime = ham.h;
    for (int p = 0; p < n; ++p)
        for (int s = 0; s < n; ++s) {
            double trace = 0.0;
            for (int q = 0; q < n; ++q) trace += ham.v(p, q, q, s);
            out.h_prime(p, s) -= 0.5 * trace;
        }

    out.v0 = out.h_prime;
    out.h0_shifted = ham.h0;
    out.mf_shift.reserve(out.vectors.size());
    for (const MatrixXd& l : out.vectors) {
        double t = 0.0;
        for (int p = 0; p < ham.n_electrons; ++p) t += l(p, p);
        out.mf_shift.push_back(t);
        out.v0 += t * l;
        out.h0_shifted -= 0.5 * t * t;
    }
    return out;
}

}  // namespace mgqmc
