// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mgqmc/bitdet.hpp"
#include "mgqmc/statevector.hpp"

namespace mgqmc {

/// Computational-basis index of an orbital occupation mask (orbital j maps
/// to qubit j, qubit 0 being the most significant bit).
inline uint64_t orbital_mask_to_basis_index(int n, bitdet::Mask mask) {
    uint64_t index = 0;
    for (int j = 0; j < n; ++j)
        if ((mask >> j) & 1u) index |= uint64_t(1) << (n - 1 - j);
    return index;
}

/// Slater determinant |phi> given by an n x zeta orbital isometry V. The
/// amplitude on occupation S (|S| = zeta) is det(V[S, :]) with rows taken in
/// ascending orbital order; columns are re-orthonormalized on construction.
class SlaterDeterminant {
  public:
    SlaterDeterminant(int n, const MatrixXcd& v) : n_(n) {
        if (v.rows() != n || v.cols() < 1 || v.cols() > n)
            throw ConfigError("orbital matrix must be n x zeta with 0 < zeta <= n");
        zeta_ = static_cast<int>(v.cols());
        Eigen::HouseholderQR<MatrixXcd> qr(v);
        MatrixXcd q = qr.householderQ() * MatrixXcd::Identity(n_, zeta_);
        const MatrixXcd r = qr.matrixQR().topRows(zeta_).triangularView<Eigen::Upper>();
        const double scale = v.cwiseAbs().maxCoeff();
        for (int j = 0; j < zeta_; ++j) {
            const double mag = std::abs(r(j, j));
            if (mag < 1e-12 * std::max(1.0, scale))
                throw NumericError("rank-deficient orbital matrix");
            q.col(j) *= r(j, j) / mag;
        }
        v_ = std::move(q);
    }

    static SlaterDeterminant from_occupation(int n, bitdet::Mask occupied) {
        const int zeta = std::popcount(occupied);
        if (zeta == 0) throw ConfigError("empty determinants are not represented");
        MatrixXcd v = MatrixXcd::Zero(n, zeta);
        int col = 0;
        for (int j = 0; j < n; ++j)
            if ((occupied >> j) & 1u) v(j, col++) = 1.0;
        return SlaterDeterminant(n, v);
    }

    int num_orbitals() const { return n_; }
    int zeta() const { return zeta_; }
    const MatrixXcd& orbitals() const { return v_; }

    cdouble amplitude(bitdet::Mask occupation) const {
        if (std::popcount(occupation) != zeta_) return 0.0;
        MatrixXcd minor(zeta_, zeta_);
        int row = 0;
        for (int j = 0; j < n_; ++j)
            if ((occupation >> j) & 1u) minor.row(row++) = v_.row(j);
        return minor.determinant();
    }

    StateVector to_statevector() const {
        StateVector psi(n_);
        psi.amplitudes().setZero();
        for (bitdet::Mask s : bitdet::enumerate_sector(n_, zeta_))
            psi.amplitudes()(static_cast<int64_t>(orbital_mask_to_basis_index(n_, s))) = amplitude(s);
        return psi;
    }

    /// n x n unitary whose first zeta columns are exactly the orbitals.
    MatrixXcd unitary_completion() const {
        Eigen::HouseholderQR<MatrixXcd> qr(v_);
        const MatrixXcd full_q = qr.householderQ() * MatrixXcd::Identity(n_, n_);
        MatrixXcd u(n_, n_);
        u.leftCols(zeta_) = v_;
        u.rightCols(n_ - zeta_) = full_q.rightCols(n_ - zeta_);
        if ((u.adjoint() * u - MatrixXcd::Identity(n_, n_)).cwiseAbs().maxCoeff() > 1e-10)
            throw NumericError("unitary completion failed");
        return u;
    }

  private:
    int n_;
    int zeta_;
    MatrixXcd v_;
};

/// <psi|phi> summed over the zeta-particle sector.
inline cdouble overlap_with_state(const StateVector& psi, const SlaterDeterminant& phi) {
    if (psi.num_qubits() != phi.num_orbitals()) throw ConfigError("qubit count mismatch");
    cdouble acc = 0.0;
    for (bitdet::Mask s : bitdet::enumerate_sector(phi.num_orbitals(), phi.zeta()))
        acc += std::conj(psi.amplitude(orbital_mask_to_basis_index(phi.num_orbitals(), s))) *
               phi.amplitude(s);
    return acc;
}

/// Normalized determinant plus the real positive scale it was divided by,
/// so that amp_cols(S) = scale * det.amplitude(S) for every occupation S.
struct ScaledDeterminant {
    SlaterDeterminant det;
    double scale = 1.0;
};

inline ScaledDeterminant factorize_columns(int n, const MatrixXcd& cols) {
    if (cols.rows() != n || cols.cols() < 1 || cols.cols() > n)
        throw ConfigError("orbital matrix must be n x zeta with 0 < zeta <= n");
    SlaterDeterminant det(n, cols);
    const MatrixXcd r = det.orbitals().adjoint() * cols;
    double scale = 1.0;
    for (int j = 0; j < cols.cols(); ++j) scale *= r(j, j).real();
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw NumericError("column factorization produced a non-positive scale");
    return {std::move(det), scale};
}

}  // namespace mgqmc
