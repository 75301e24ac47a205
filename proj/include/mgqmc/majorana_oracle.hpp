// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <functional>
#include <vector>

#include "mgqmc/pauli.hpp"
#include "mgqmc/statevector.hpp"

namespace mgqmc {

/// Brute-force dense constructions over the Majorana-monomial basis. These
/// are deliberately slow, formula-free reference implementations used to
/// check the closed-form channel spectrum and coefficient results.

/// Calls fn(indices) for every ascending k-subset of {0, ..., m-1}.
inline void for_each_subset(int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
    if (k < 0 || k > m) return;
    std::vector<int> idx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<size_t>(i)] = i;
    while (true) {
        fn(idx);
        int j = k - 1;
        while (j >= 0 && idx[static_cast<size_t>(j)] == m - k + j) --j;
        if (j < 0) return;
        ++idx[static_cast<size_t>(j)];
        for (int i = j + 1; i < k; ++i)
            idx[static_cast<size_t>(i)] = idx[static_cast<size_t>(i - 1)] + 1;
    }
}

/// Dense gamma_S = gamma_{s1} gamma_{s2} ... for ascending indices s1 < s2 < ...
inline MatrixXcd majorana_monomial_dense(int n, const std::vector<int>& indices) {
    if (n > 4) throw ResourceError("dense Majorana monomials capped at n = 4");
    const std::int64_t dim = std::int64_t{1} << n;
    MatrixXcd out = MatrixXcd::Identity(dim, dim);
    for (int mu : indices) out *= majorana_string(n, mu).to_dense();
    return out;
}

/// Completely dephasing map: keeps the computational-basis diagonal.
inline MatrixXcd dephase(const MatrixXcd& a) {
    return a.diagonal().asDiagonal();
}

/// Projector onto basis states whose particle number lies in `weights`.
inline MatrixXcd particle_number_projector(int n, const std::vector<int>& weights) {
    const std::int64_t dim = std::int64_t{1} << n;
    MatrixXcd p = MatrixXcd::Zero(dim, dim);
    for (std::int64_t b = 0; b < dim; ++b)
        for (int w : weights)
            if (std::popcount(static_cast<std::uint64_t>(b)) == w) p(b, b) = 1.0;
    return p;
}

/// Projection of |phi><0...0| onto the degree-2l Majorana subspace,
/// 2^{-n} sum_{|S|=2l} <0|gamma_S^dag|phi> gamma_S, from first principles.
inline MatrixXcd brute_force_projector_action(const StateVector& phi, int l) {
    const int n = phi.num_qubits();
    if (n > 4) throw ResourceError("projector enumeration capped at n = 4");
    const std::int64_t dim = std::int64_t{1} << n;
    MatrixXcd out = MatrixXcd::Zero(dim, dim);
    const VectorXcd& amps = phi.amplitudes();
    for_each_subset(2 * n, 2 * l, [&](const std::vector<int>& subset) {
        const MatrixXcd gamma = majorana_monomial_dense(n, subset);
        const cdouble weight = (gamma.adjoint() * amps)(0);
        out += weight * gamma;
    });
    return out / static_cast<double>(dim);
}

/// Channel eigenvalue from its definition: the Hilbert-Schmidt trace of the
/// dephasing map restricted to the degree-2l subspace, divided by the
/// subspace dimension binom(2n,2l).
inline double channel_eigenvalue_definitional(int n, int l) {
    if (n > 3) throw ResourceError("definitional channel trace capped at n = 3");
    const double dim = static_cast<double>(std::int64_t{1} << n);
    double trace = 0.0;
    for_each_subset(2 * n, 2 * l, [&](const std::vector<int>& subset) {
        const MatrixXcd gamma = majorana_monomial_dense(n, subset);
        trace += ((gamma.adjoint() * dephase(gamma)).trace() / dim).real();
    });
    return trace / binomial(2 * n, 2 * l);
}

}  // namespace mgqmc
