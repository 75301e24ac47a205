// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "mgqmc/hamiltonian.hpp"
#include "mgqmc/pauli.hpp"

namespace mgqmc {

/// Qubit-space image of a second-quantized Hamiltonian as a Pauli-term map.
struct QubitHamiltonian {
    int n = 0;
    PauliPolynomial terms;

    /// Dense matrix on the full 2^n space; capped because it is only meant
    /// for verification at small n.
    MatrixXcd to_dense(int cap = 10) const {
        if (n > cap) throw ResourceError("dense qubit Hamiltonian capped at n = " +
                                         std::to_string(cap));
        return terms.to_dense(n);
    }
};

namespace detail {

using LadderTerms = std::vector<std::pair<cdouble, PauliString>>;

/// a_p (or a_p^dag) under Jordan-Wigner: Z_0..Z_{p-1} (X_p +- i Y_p)/2.
inline LadderTerms jw_ladder(int n, int p, bool dagger) {
    PauliString x(n), y(n);
    for (int k = 0; k < p; ++k) {
        x.set(k, PauliString::Z);
        y.set(k, PauliString::Z);
    }
    x.set(p, PauliString::X);
    y.set(p, PauliString::Y);
    return {{cdouble(0.5, 0.0), x}, {dagger ? cdouble(0.0, -0.5) : cdouble(0.0, 0.5), y}};
}

inline LadderTerms jw_product(const LadderTerms& a, const LadderTerms& b) {
    LadderTerms out;
    out.reserve(a.size() * b.size());
    for (const auto& [ca, sa] : a)
        for (const auto& [cb, sb] : b) {
            auto [phase, s] = pauli_mul(sa, sb);
            out.emplace_back(ca * cb * phase, s);
        }
    return out;
}

}  // namespace detail

/// Maps the second-quantized Hamiltonian to a Pauli polynomial. All
/// coefficients come out real (within roundoff) because h and v are real
/// and every Pauli string is itself Hermitian.
inline QubitHamiltonian jordan_wigner_map(const MolecularHamiltonian& ham) {
    const int n = ham.n;
    QubitHamiltonian out;
    out.n = n;
    out.terms.add(PauliString(n), ham.h0);

    std::vector<detail::LadderTerms> create, destroy;
    create.reserve(static_cast<size_t>(n));
    destroy.reserve(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) {
        create.push_back(detail::jw_ladder(n, p, true));
        destroy.push_back(detail::jw_ladder(n, p, false));
    }

    for (int p = 0; p < n; ++p)
        for (int s = 0; s < n; ++s) {
            if (ham.h(p, s) == 0.0) continue;
            for (const auto& [c, str] : detail::jw_product(create[p], destroy[s]))
                out.terms.add(str, ham.h(p, s) * c);
        }

    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            const auto left = detail::jw_product(create[p], create[q]);
            for (int s = 0; s < n; ++s) {
                const auto three = detail::jw_product(left, destroy[s]);
                for (int r = 0; r < n; ++r) {
                    const double v = ham.v(p, q, r, s);
                    if (v == 0.0) continue;
                    for (const auto& [c, str] : detail::jw_product(three, destroy[r]))
                        out.terms.add(str, 0.5 * v * c);
                }
            }
        }

    out.terms.prune(1e-12);
    for (const auto& [str, c] : out.terms.terms())
        if (std::abs(c.imag()) > 1e-10)
            throw NumericError("qubit Hamiltonian coefficient is not real: " + str.to_string());
    return out;
}

}  // namespace mgqmc
