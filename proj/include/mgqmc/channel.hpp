// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "mgqmc/common.hpp"

namespace mgqmc {

/// Eigenvalue of the ideal measurement channel on the degree-2l Majorana
/// subspace: binom(2n,2l)^{-1} binom(n,l).
inline double channel_eigenvalue(int n, int l) {
    if (n < 1) throw ConfigError("qubit count must be positive");
    if (l < 0 || l > n) throw ConfigError("channel eigenvalue index out of range");
    return binomial(n, l) / binomial(2 * n, 2 * l);
}

/// Coefficients expanding the sector-projected action of the degree-2l
/// projector on |phi><0|: 2^{zeta-n} binom(n-zeta, l-zeta/2) on the support
/// zeta/2 <= l <= n-zeta/2, zero elsewhere.
inline double b_coefficient(int n, int zeta, int l) {
    if (n < 1) throw ConfigError("qubit count must be positive");
    if (zeta < 0 || zeta > n) throw ConfigError("particle count out of range");
    if (zeta % 2 != 0) throw ConfigError("odd particle numbers are not supported");
    if (l < 0 || l > n) throw ConfigError("coefficient index out of range");
    if (2 * l < zeta || 2 * l > 2 * n - zeta) return 0.0;
    return std::pow(2.0, zeta - n) * binomial(n - zeta, l - zeta / 2);
}

/// The n+1 even-subspace eigenvalues, ideal (f) or calibrated (f-tilde).
struct ChannelSpectrum {
    int n = 0;
    std::vector<double> f;
    bool calibrated = false;

    static ChannelSpectrum ideal(int n) {
        ChannelSpectrum s;
        s.n = n;
        s.f.resize(static_cast<size_t>(n) + 1);
        for (int l = 0; l <= n; ++l) s.f[static_cast<size_t>(l)] = channel_eigenvalue(n, l);
        return s;
    }

    void validate() const {
        if (n < 1 || f.size() != static_cast<size_t>(n) + 1)
            throw ConfigError("channel spectrum has wrong length");
        for (double v : f)
            if (!std::isfinite(v)) throw NumericError("channel spectrum contains non-finite entries");
    }

    /// Rejects spectra whose inversion would amplify noise without bound on
    /// the sectors a zeta-particle estimate actually uses.
    void check_conditioning(int zeta) const {
        validate();
        for (int l = 0; l <= n; ++l) {
            if (b_coefficient(n, zeta, l) != 0.0 && std::abs(f[static_cast<size_t>(l)]) < 1e-3)
                throw NumericError("ill-conditioned calibration: |f_" + std::to_string(2 * l) +
                                   "| < 1e-3 on a populated sector");
        }
    }
};

}  // namespace mgqmc
