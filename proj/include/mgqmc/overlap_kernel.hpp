// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "mgqmc/pfaffian.hpp"
#include "mgqmc/signed_permutation.hpp"
#include "mgqmc/slater.hpp"

namespace mgqmc {

/// Scratch buffers for the per-sample kernel evaluation; reuse across calls
/// to keep the post-processing hot path allocation-free.
struct KernelWorkspace {
    MatrixXcd d, cbd, m, m_keep, a;
    std::vector<cdouble> qvals;
};

/// Pfaffian polynomial evaluator for overlap shadows. For a sample (Q, b)
/// and a zeta-particle determinant phi with unitary completion U, the
/// coefficient of z^l in
///   q(z) = i^{zeta/2} 2^{-(n-zeta/2)} pf[(C0 + z D^T C_b D)|_keep],
///   D = Q Q'(U) W^dag,
/// is the degree-2l component tr[|phi><0| Pi_2l(U_Q^dag |b><b| U_Q)]. The
/// retained index set keeps the odd Majorana of each occupied mode and both
/// Majoranas of every empty mode. Coefficients are recovered by evaluating
/// at the (n - zeta/2 + 1) roots of unity and inverting the Fourier system.
/// With zeta = 0 and U = I this is the calibration kernel over all indices.
class OverlapKernel {
  public:
    OverlapKernel(int n, int zeta) : n_(n), zeta_(zeta) {
        if (n < 1) throw ConfigError("qubit count must be positive");
        if (zeta < 0 || zeta > n) throw ConfigError("particle count out of range");
        if (zeta % 2 != 0) throw ConfigError("odd particle numbers are not supported");
        const int m = 2 * n;
        for (int j = 0; j < zeta; ++j) keep_.push_back(2 * j + 1);
        for (int mu = 2 * zeta; mu < m; ++mu) keep_.push_back(mu);

        MatrixXcd w = MatrixXcd::Identity(m, m);
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (int j = 0; j < zeta; ++j) {
            w(2 * j, 2 * j) = inv_sqrt2;
            w(2 * j, 2 * j + 1) = cdouble(0.0, -inv_sqrt2);
            w(2 * j + 1, 2 * j) = inv_sqrt2;
            w(2 * j + 1, 2 * j + 1) = cdouble(0.0, inv_sqrt2);
        }
        w_dagger_ = w.adjoint();

        const int k = static_cast<int>(keep_.size());
        c0_keep_ = MatrixXcd::Zero(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                const int mu = keep_[static_cast<size_t>(i)], nu = keep_[static_cast<size_t>(j)];
                if (mu / 2 != nu / 2) continue;
                if (mu + 1 == nu)
                    c0_keep_(i, j) = 1.0;
                else if (nu + 1 == mu)
                    c0_keep_(i, j) = -1.0;
            }

        const int powers = ((zeta / 2) % 4 + 4) % 4;
        static const cdouble i_cycle[4] = {cdouble(1, 0), cdouble(0, 1), cdouble(-1, 0),
                                           cdouble(0, -1)};
        prefactor_ = i_cycle[powers] * std::pow(2.0, -(n - zeta / 2));
    }

    int degree() const { return n_ - zeta_ / 2; }
    int num_qubits() const { return n_; }
    int zeta() const { return zeta_; }

    /// Determinant-dependent part of D, computed once per phi:
    /// Q'(U) W^dag, where Q' doubles the unitary completion U into its real
    /// representation on Majorana indices.
    MatrixXcd phi_transform(const MatrixXcd& completion) const {
        if (completion.rows() != n_ || completion.cols() != n_)
            throw ConfigError("completion must be n x n");
        const int m = 2 * n_;
        MatrixXcd qprime = MatrixXcd::Zero(m, m);
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k) {
                const cdouble u = completion(j, k);
                qprime(2 * j, 2 * k) = u.real();
                qprime(2 * j, 2 * k + 1) = -u.imag();
                qprime(2 * j + 1, 2 * k) = u.imag();
                qprime(2 * j + 1, 2 * k + 1) = u.real();
            }
        return qprime * w_dagger_;
    }

    MatrixXcd phi_transform(const SlaterDeterminant& phi) const {
        if (phi.zeta() != zeta_) throw ConfigError("determinant sector mismatch");
        return phi_transform(phi.unitary_completion());
    }

    /// Identity transform (U = I); the calibration path with zeta = 0.
    MatrixXcd identity_transform() const {
        return phi_transform(MatrixXcd::Identity(n_, n_));
    }

    /// All polynomial coefficients (length degree()+1); out[l] multiplies z^l.
    void coefficients(const MatrixXcd& phi_tf, const SignedPermutation& q, uint64_t bits,
                      std::vector<cdouble>& out, KernelWorkspace& ws) const {
        build_m_keep(phi_tf, q, bits, ws);
        const int nodes = degree() + 1;
        ws.qvals.resize(static_cast<size_t>(nodes));
        for (int k = 0; k < nodes; ++k) {
            const cdouble z = std::polar(1.0, 2.0 * kPi * k / nodes);
            ws.a = c0_keep_ + z * ws.m_keep;
            ws.qvals[static_cast<size_t>(k)] = prefactor_ * pfaffian_inplace(ws.a);
        }
        out.assign(static_cast<size_t>(nodes), cdouble(0.0, 0.0));
        for (int j = 0; j < nodes; ++j) {
            cdouble acc = 0.0;
            for (int k = 0; k < nodes; ++k)
                acc += ws.qvals[static_cast<size_t>(k)] *
                       std::polar(1.0, -2.0 * kPi * j * k / nodes);
            out[static_cast<size_t>(j)] = acc / static_cast<double>(nodes);
        }
    }

    /// q(1) = <0|U_Q^dag|b><b|U_Q|phi>, one Pfaffian per sample.
    cdouble evaluate_at_one(const MatrixXcd& phi_tf, const SignedPermutation& q, uint64_t bits,
                            KernelWorkspace& ws) const {
        build_m_keep(phi_tf, q, bits, ws);
        ws.a = c0_keep_ + ws.m_keep;
        return prefactor_ * pfaffian_inplace(ws.a);
    }

  private:
    void build_m_keep(const MatrixXcd& phi_tf, const SignedPermutation& q, uint64_t bits,
                      KernelWorkspace& ws) const {
        if (q.n != n_) throw ConfigError("signed permutation size mismatch");
        const int m = 2 * n_;
        ws.d.resize(m, m);
        for (int mu = 0; mu < m; ++mu)
            ws.d.row(q.perm[static_cast<size_t>(mu)]) =
                static_cast<double>(q.signs[static_cast<size_t>(mu)]) * phi_tf.row(mu);
        ws.cbd.resize(m, m);
        for (int j = 0; j < n_; ++j) {
            const double s = ((bits >> (n_ - 1 - j)) & 1u) ? -1.0 : 1.0;
            ws.cbd.row(2 * j) = s * ws.d.row(2 * j + 1);
            ws.cbd.row(2 * j + 1) = -s * ws.d.row(2 * j);
        }
        ws.m.noalias() = ws.d.transpose() * ws.cbd;
        const int k = static_cast<int>(keep_.size());
        ws.m_keep.resize(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                ws.m_keep(i, j) = ws.m(keep_[static_cast<size_t>(i)], keep_[static_cast<size_t>(j)]);
    }

    int n_;
    int zeta_;
    std::vector<int> keep_;
    MatrixXcd w_dagger_;
    MatrixXcd c0_keep_;
    cdouble prefactor_;
};

}  // namespace mgqmc
