// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "mgqmc/circuit.hpp"
#include "mgqmc/signed_permutation.hpp"

namespace mgqmc {

/// Planar Majorana rotation: the unitary exp((angle/2) g_mu g_{mu+1}) whose
/// adjoint action maps
///   g_mu     -> cos(angle) g_mu - sin(angle) g_{mu+1}
///   g_{mu+1} -> sin(angle) g_mu + cos(angle) g_{mu+1}.
struct MajoranaRotation {
    int pair;
    double angle;
};

/// Gate plan realizing U_Q with U_Q g_mu U_Q^dag = sum_nu Q_{nu,mu} g_nu.
/// Rotations are stored in application order; flip_last means an X on the
/// final qubit applied before all rotations (realizing g_{2n-1} -> -g_{2n-1}).
struct CompiledMatchgate {
    int n = 0;
    std::vector<MajoranaRotation> rotations;
    bool flip_last = false;

    size_t gate_count() const { return rotations.size() + (flip_last ? 1 : 0); }

    Circuit to_circuit() const {
        Circuit c(n);
        if (flip_last) c.x(n - 1);
        for (const auto& r : rotations) {
            const int j = r.pair / 2;
            if (r.pair % 2 == 0)
                c.rz(j, -r.angle);
            else
                c.rpp(GateKind::RotXX, j, -r.angle);
        }
        return c;
    }

    /// Reconstructs Q from the stored plan (decomposition self-check).
    MatrixXd to_majorana_matrix() const {
        const int m = 2 * n;
        MatrixXd q = MatrixXd::Identity(m, m);
        if (flip_last) q(m - 1, m - 1) = -1.0;
        for (const auto& r : rotations) {
            const double c = std::cos(r.angle), s = std::sin(r.angle);
            MatrixXd rows(2, m);
            rows.row(0) = q.row(r.pair);
            rows.row(1) = q.row(r.pair + 1);
            q.row(r.pair) = c * rows.row(0) + s * rows.row(1);
            q.row(r.pair + 1) = -s * rows.row(0) + c * rows.row(1);
        }
        return q;
    }
};

/// Decomposes an orthogonal 2n x 2n matrix into adjacent-plane Givens
/// rotations and at most one reflection. The sweep leaves a +-1 diagonal;
/// every -1 is pushed rightward with a pi rotation (a column skipped by the
/// sweep can park a -1 anywhere, not only at the end), so the residual
/// reflection always lands on the last Majorana index.
inline CompiledMatchgate compile_matchgate(const MatrixXd& q_in) {
    const int m = static_cast<int>(q_in.rows());
    if (q_in.cols() != m || m < 2 || m % 2 != 0)
        throw ConfigError("expected a 2n x 2n matrix");
    if ((q_in.transpose() * q_in - MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-9)
        throw NumericError("matrix is not orthogonal");

    MatrixXd r = q_in;
    std::vector<MajoranaRotation> elim;
    for (int col = 0; col < m - 1; ++col) {
        for (int row = m - 2; row >= col; --row) {
            const double a = r(row, col);
            const double b = r(row + 1, col);
            if (std::abs(b) < 1e-14) continue;
            const double theta = std::atan2(b, a);
            const double c = std::cos(theta), s = std::sin(theta);
            Eigen::RowVectorXd top = r.row(row);
            Eigen::RowVectorXd bot = r.row(row + 1);
            r.row(row) = c * top + s * bot;
            r.row(row + 1) = -s * top + c * bot;
            elim.push_back({row, theta});
        }
    }

    std::vector<double> d(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) d[static_cast<size_t>(i)] = r(i, i);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const double expected = (i == j) ? std::abs(d[static_cast<size_t>(i)]) : 0.0;
            if (std::abs(std::abs(r(i, j)) - expected) > 1e-9)
                throw NumericError("Givens sweep did not reach diagonal form");
        }
    }

    std::vector<MajoranaRotation> pushes;
    for (int p = 0; p < m - 1; ++p) {
        if (d[static_cast<size_t>(p)] < 0.0) {
            pushes.push_back({p, kPi});
            d[static_cast<size_t>(p)] = -d[static_cast<size_t>(p)];
            d[static_cast<size_t>(p + 1)] = -d[static_cast<size_t>(p + 1)];
        }
    }

    CompiledMatchgate plan;
    plan.n = m / 2;
    plan.flip_last = d[static_cast<size_t>(m - 1)] < 0.0;
    plan.rotations.reserve(pushes.size() + elim.size());
    for (auto it = pushes.rbegin(); it != pushes.rend(); ++it) plan.rotations.push_back(*it);
    for (auto it = elim.rbegin(); it != elim.rend(); ++it)
        plan.rotations.push_back({it->pair, -it->angle});
    return plan;
}

inline CompiledMatchgate compile_matchgate(const SignedPermutation& q) {
    return compile_matchgate(q.to_matrix());
}

}  // namespace mgqmc
