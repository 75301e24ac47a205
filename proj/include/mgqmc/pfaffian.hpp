// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

#include "mgqmc/common.hpp"

namespace mgqmc {

/// Pfaffian of an antisymmetric matrix by the Parlett-Reid algorithm with
/// partial pivoting. The input is destroyed. Throws NumericError for odd
/// dimension and for asymmetry beyond `asym_tol` (small asymmetry is repaired
/// by averaging with the negated transpose).
template <typename Scalar>
Scalar pfaffian_inplace(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A,
                        double asym_tol = 1e-10) {
    const Eigen::Index m = A.rows();
    if (m != A.cols() || m % 2 != 0) throw NumericError("pfaffian requires an even-dimensional square matrix");
    if (m == 0) return Scalar(1);

    double asym = 0.0, scale = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) {
            asym = std::max(asym, std::abs(A(i, j) + A(j, i)));
            scale = std::max(scale, std::abs(A(i, j)));
        }
    if (asym > asym_tol * std::max(1.0, scale)) throw NumericError("pfaffian input is not antisymmetric");
    A = ((A - A.transpose()) / 2.0).eval();

    Scalar pf(1);
    for (Eigen::Index k = 0; k + 2 < m; k += 2) {
        Eigen::Index piv = k + 1;
        double best = std::abs(A(k + 1, k));
        for (Eigen::Index j = k + 2; j < m; ++j) {
            if (std::abs(A(j, k)) > best) {
                best = std::abs(A(j, k));
                piv = j;
            }
        }
        if (best == 0.0) return Scalar(0);
        if (piv != k + 1) {
            A.row(k + 1).swap(A.row(piv));
            A.col(k + 1).swap(A.col(piv));
            pf = -pf;
        }
        const Scalar pivot = A(k + 1, k);
        pf *= A(k, k + 1);
        for (Eigen::Index j = k + 2; j < m; ++j) {
            const Scalar mu = A(j, k) / pivot;
            if (mu == Scalar(0)) continue;
            A.row(j) -= mu * A.row(k + 1);
            A.col(j) -= mu * A.col(k + 1);
        }
    }
    return pf * A(m - 2, m - 1);
}

template <typename Scalar>
Scalar pfaffian(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A,
                double asym_tol = 1e-10) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> work = A;
    return pfaffian_inplace(work, asym_tol);
}

}  // namespace mgqmc
