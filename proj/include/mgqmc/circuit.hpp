// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <vector>

#include "mgqmc/statevector.hpp"

namespace mgqmc {

/// Gate set: H, X, Z, Rz, Ry; CNOT plus two-qubit Majorana rotations
/// exp(-i(theta/2) P(x)P') with P, P' in {X, Y} on adjacent qubits; and the
/// four-qubit double-excitation rotation.
enum class GateKind { H, X, Z, RotZ, RotY, CNOT, RotXX, RotXY, RotYX, RotYY, DoubleExcitation };

struct Gate {
    GateKind kind;
    std::array<int, 4> q{-1, -1, -1, -1};
    double angle = 0.0;

    int arity() const {
        switch (kind) {
            case GateKind::H:
            case GateKind::X:
            case GateKind::Z:
            case GateKind::RotZ:
            case GateKind::RotY:
                return 1;
            case GateKind::CNOT:
            case GateKind::RotXX:
            case GateKind::RotXY:
            case GateKind::RotYX:
            case GateKind::RotYY:
                return 2;
            case GateKind::DoubleExcitation:
                return 4;
        }
        return 0;
    }

    bool is_rotation() const {
        return kind == GateKind::RotZ || kind == GateKind::RotY || kind == GateKind::RotXX ||
               kind == GateKind::RotXY || kind == GateKind::RotYX || kind == GateKind::RotYY ||
               kind == GateKind::DoubleExcitation;
    }
};

inline const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Z: return "z";
        case GateKind::RotZ: return "rz";
        case GateKind::RotY: return "ry";
        case GateKind::CNOT: return "cnot";
        case GateKind::RotXX: return "rxx";
        case GateKind::RotXY: return "rxy";
        case GateKind::RotYX: return "ryx";
        case GateKind::RotYY: return "ryy";
        case GateKind::DoubleExcitation: return "u_de";
    }
    return "?";
}

inline GateKind gate_kind_from_name(const std::string& s) {
    if (s == "h") return GateKind::H;
    if (s == "x") return GateKind::X;
    if (s == "z") return GateKind::Z;
    if (s == "rz") return GateKind::RotZ;
    if (s == "ry") return GateKind::RotY;
    if (s == "cnot") return GateKind::CNOT;
    if (s == "rxx") return GateKind::RotXX;
    if (s == "rxy") return GateKind::RotXY;
    if (s == "ryx") return GateKind::RotYX;
    if (s == "ryy") return GateKind::RotYY;
    if (s == "u_de") return GateKind::DoubleExcitation;
    throw ConfigError("unknown gate name: " + s);
}

/// Ordered gate list over a fixed qubit count.
class Circuit {
  public:
    explicit Circuit(int n) : n_(n) {
        if (n < 1) throw ConfigError("circuit needs at least one qubit");
    }

    int num_qubits() const { return n_; }
    const std::vector<Gate>& gates() const { return gates_; }
    size_t size() const { return gates_.size(); }

    Circuit& h(int q) { return push({GateKind::H, {q, -1, -1, -1}, 0.0}); }
    Circuit& x(int q) { return push({GateKind::X, {q, -1, -1, -1}, 0.0}); }
    Circuit& z(int q) { return push({GateKind::Z, {q, -1, -1, -1}, 0.0}); }
    /// exp(-i(theta/2) Z_q)
    Circuit& rz(int q, double theta) { return push({GateKind::RotZ, {q, -1, -1, -1}, theta}); }
    /// exp(-i(theta/2) Y_q)
    Circuit& ry(int q, double theta) { return push({GateKind::RotY, {q, -1, -1, -1}, theta}); }
    Circuit& cnot(int control, int target) {
        return push({GateKind::CNOT, {control, target, -1, -1}, 0.0});
    }
    /// exp(-i(theta/2) P_q P'_{q+1}) on the adjacent pair (q, q+1).
    Circuit& rpp(GateKind kind, int q, double theta) {
        if (kind != GateKind::RotXX && kind != GateKind::RotXY && kind != GateKind::RotYX &&
            kind != GateKind::RotYY)
            throw ConfigError("rpp expects a two-qubit Majorana rotation kind");
        return push({kind, {q, q + 1, -1, -1}, theta});
    }
    Circuit& rxx(int q, double theta) { return rpp(GateKind::RotXX, q, theta); }
    /// Swap realized with three CNOTs, staying inside the declared gate set.
    Circuit& swap(int a, int b) {
        cnot(a, b);
        cnot(b, a);
        return cnot(a, b);
    }
    Circuit& u_de(double theta, int a, int b, int c, int d) {
        return push({GateKind::DoubleExcitation, {a, b, c, d}, theta});
    }

    Circuit& append(const Circuit& other) {
        if (other.n_ != n_) throw ConfigError("appending circuit with different qubit count");
        gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
        return *this;
    }

    Circuit& append(const Gate& g) { return push(g); }

    void apply_gate(StateVector& psi, const Gate& g) const {
        switch (g.kind) {
            case GateKind::H:
                psi.apply_h(g.q[0]);
                break;
            case GateKind::X:
                psi.apply_x(g.q[0]);
                break;
            case GateKind::Z:
                psi.apply_z(g.q[0]);
                break;
            case GateKind::RotZ: {
                Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
                m(0, 0) = std::exp(cdouble(0.0, -g.angle / 2.0));
                m(1, 1) = std::exp(cdouble(0.0, g.angle / 2.0));
                psi.apply_1q(m, g.q[0]);
                break;
            }
            case GateKind::RotY: {
                const double c = std::cos(g.angle / 2.0), s = std::sin(g.angle / 2.0);
                Eigen::Matrix2cd m;
                m << c, -s, s, c;
                psi.apply_1q(m, g.q[0]);
                break;
            }
            case GateKind::CNOT:
                psi.apply_cnot(g.q[0], g.q[1]);
                break;
            case GateKind::RotXX:
            case GateKind::RotXY:
            case GateKind::RotYX:
            case GateKind::RotYY: {
                const bool first_x = g.kind == GateKind::RotXX || g.kind == GateKind::RotXY;
                const bool second_x = g.kind == GateKind::RotXX || g.kind == GateKind::RotYX;
                Eigen::Matrix2cd px, py, a, b;
                px << 0, 1, 1, 0;
                py << cdouble(0, 0), cdouble(0, -1), cdouble(0, 1), cdouble(0, 0);
                a = first_x ? px : py;
                b = second_x ? px : py;
                Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity() * std::cos(g.angle / 2.0);
                const cdouble js(0.0, -std::sin(g.angle / 2.0));
                for (int r = 0; r < 4; ++r)
                    for (int c = 0; c < 4; ++c)
                        m(r, c) += js * a(r >> 1, c >> 1) * b(r & 1, c & 1);
                psi.apply_2q(m, g.q[0], g.q[1]);
                break;
            }
            case GateKind::DoubleExcitation:
                psi.apply_double_excitation(g.angle, g.q[0], g.q[1], g.q[2], g.q[3]);
                break;
        }
    }

    void apply(StateVector& psi) const {
        for (const auto& g : gates_) apply_gate(psi, g);
    }

    StateVector run() const {
        StateVector psi(n_);
        apply(psi);
        return psi;
    }

    StateVector run(StateVector psi) const {
        apply(psi);
        return psi;
    }

    /// Dense unitary, for oracle checks at small n.
    MatrixXcd to_dense() const {
        const int64_t dim = int64_t(1) << n_;
        MatrixXcd u(dim, dim);
        for (int64_t c = 0; c < dim; ++c) {
            StateVector psi = StateVector::from_basis_index(n_, static_cast<uint64_t>(c));
            apply(psi);
            u.col(c) = psi.amplitudes();
        }
        return u;
    }

  private:
    Circuit& push(Gate g) {
        const int arity = g.arity();
        for (int k = 0; k < arity; ++k) {
            if (g.q[k] < 0 || g.q[k] >= n_) throw ConfigError("gate qubit index out of range");
            for (int j = 0; j < k; ++j)
                if (g.q[j] == g.q[k]) throw ConfigError("gate qubits must be distinct");
        }
        if ((g.kind == GateKind::RotXX || g.kind == GateKind::RotXY || g.kind == GateKind::RotYX ||
             g.kind == GateKind::RotYY) &&
            g.q[1] != g.q[0] + 1)
            throw ConfigError("Majorana rotations act on adjacent qubit pairs only");
        gates_.push_back(g);
        return *this;
    }

    int n_;
    std::vector<Gate> gates_;
};

}  // namespace mgqmc
