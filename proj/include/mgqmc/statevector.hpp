// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "mgqmc/common.hpp"
#include "mgqmc/pauli.hpp"
#include "mgqmc/rng.hpp"

namespace mgqmc {

/// Dense n-qubit state. Qubit 0 is the leftmost position of a bitstring and
/// therefore the most significant bit of the amplitude index.
class StateVector {
  public:
    explicit StateVector(int n) : n_(n), amp_(VectorXcd::Zero(int64_t(1) << n)) {
        if (n < 1 || n > 24) throw ConfigError("qubit count out of range");
        amp_(0) = 1.0;
    }

    static StateVector from_basis_index(int n, uint64_t index) {
        StateVector s(n);
        s.amp_.setZero();
        s.amp_(static_cast<int64_t>(index)) = 1.0;
        return s;
    }

    int num_qubits() const { return n_; }
    int64_t dim() const { return amp_.size(); }
    const VectorXcd& amplitudes() const { return amp_; }
    VectorXcd& amplitudes() { return amp_; }
    cdouble amplitude(uint64_t index) const { return amp_(static_cast<int64_t>(index)); }

    /// Bit of qubit `q` inside amplitude index `index`.
    int bit(uint64_t index, int q) const { return static_cast<int>((index >> (n_ - 1 - q)) & 1u); }

    double norm() const { return amp_.norm(); }

    void normalize() {
        const double nrm = norm();
        if (nrm < 1e-300) throw NumericError("cannot normalize a null state");
        amp_ /= nrm;
    }

    cdouble inner(const StateVector& other) const {
        if (other.n_ != n_) throw ConfigError("qubit count mismatch in inner product");
        return amp_.dot(other.amp_);
    }

    void apply_1q(const Eigen::Matrix2cd& g, int q) {
        check_qubit(q);
        const int64_t stride = int64_t(1) << (n_ - 1 - q);
        for (int64_t base = 0; base < dim(); base += 2 * stride) {
            for (int64_t i = base; i < base + stride; ++i) {
                const cdouble a0 = amp_(i);
                const cdouble a1 = amp_(i + stride);
                amp_(i) = g(0, 0) * a0 + g(0, 1) * a1;
                amp_(i + stride) = g(1, 0) * a0 + g(1, 1) * a1;
            }
        }
    }

    /// Two-qubit gate in the basis |q1 q2> = {00, 01, 10, 11}.
    void apply_2q(const Eigen::Matrix4cd& g, int q1, int q2) {
        check_qubit(q1);
        check_qubit(q2);
        if (q1 == q2) throw ConfigError("two-qubit gate needs distinct qubits");
        const int64_t s1 = int64_t(1) << (n_ - 1 - q1);
        const int64_t s2 = int64_t(1) << (n_ - 1 - q2);
        for (int64_t i = 0; i < dim(); ++i) {
            if ((i & s1) != 0 || (i & s2) != 0) continue;
            cdouble v[4] = {amp_(i), amp_(i + s2), amp_(i + s1), amp_(i + s1 + s2)};
            for (int r = 0; r < 4; ++r) {
                cdouble acc = 0.0;
                for (int c = 0; c < 4; ++c) acc += g(r, c) * v[c];
                amp_(i + (r >> 1) * s1 + (r & 1) * s2) = acc;
            }
        }
    }

    /// In-place multiplication by a Pauli word.
    void apply_pauli(const PauliString& p) {
        if (p.size() != n_) throw ConfigError("Pauli width mismatch");
        uint64_t flip = 0;
        for (int q = 0; q < n_; ++q) {
            const auto op = p.op(q);
            if (op == PauliString::Op::X || op == PauliString::Op::Y)
                flip |= uint64_t(1) << (n_ - 1 - q);
        }
        VectorXcd out(dim());
        for (int64_t i = 0; i < dim(); ++i) {
            cdouble phase = 1.0;
            for (int q = 0; q < n_; ++q) {
                const int b = bit(static_cast<uint64_t>(i), q);
                switch (p.op(q)) {
                    case PauliString::Op::I:
                        break;
                    case PauliString::Op::X:
                        break;
                    case PauliString::Op::Y:
                        phase *= b ? cdouble(0.0, -1.0) : cdouble(0.0, 1.0);
                        break;
                    case PauliString::Op::Z:
                        if (b) phase = -phase;
                        break;
                }
            }
            out(static_cast<int64_t>(static_cast<uint64_t>(i) ^ flip)) = phase * amp_(i);
        }
        amp_.swap(out);
    }

    /// exp(i * angle * P) for a Pauli word P, using P^2 = I.
    void apply_exp_i_pauli(const PauliString& p, double angle) {
        StateVector flipped = *this;
        flipped.apply_pauli(p);
        amp_ = std::cos(angle) * amp_ + cdouble(0.0, std::sin(angle)) * flipped.amp_;
    }

    void apply_h(int q) {
        Eigen::Matrix2cd h;
        const double s = 1.0 / std::sqrt(2.0);
        h << s, s, s, -s;
        apply_1q(h, q);
    }

    void apply_x(int q) {
        Eigen::Matrix2cd g;
        g << 0, 1, 1, 0;
        apply_1q(g, q);
    }

    void apply_y(int q) {
        Eigen::Matrix2cd g;
        g << cdouble(0, 0), cdouble(0, -1), cdouble(0, 1), cdouble(0, 0);
        apply_1q(g, q);
    }

    void apply_z(int q) {
        Eigen::Matrix2cd g;
        g << 1, 0, 0, -1;
        apply_1q(g, q);
    }

    void apply_cnot(int control, int target) {
        check_qubit(control);
        check_qubit(target);
        if (control == target) throw ConfigError("cnot needs distinct qubits");
        const int64_t sc = int64_t(1) << (n_ - 1 - control);
        const int64_t st = int64_t(1) << (n_ - 1 - target);
        for (int64_t i = 0; i < dim(); ++i)
            if ((i & sc) != 0 && (i & st) == 0) std::swap(amp_(i), amp_(i + st));
    }

    void apply_swap(int q1, int q2) {
        apply_cnot(q1, q2);
        apply_cnot(q2, q1);
        apply_cnot(q1, q2);
    }

    /// Planar rotation acting on the two-dimensional span of |1100> and
    /// |0011> over the qubit tuple (a, b, c, d):
    ///   |1100> -> cos(theta/2) |1100> - sin(theta/2) |0011>
    ///   |0011> -> sin(theta/2) |1100> + cos(theta/2) |0011>
    void apply_double_excitation(double theta, int a, int b, int c, int d) {
        const int q[4] = {a, b, c, d};
        for (int k = 0; k < 4; ++k) check_qubit(q[k]);
        uint64_t hi = 0, lo = 0;
        hi |= uint64_t(1) << (n_ - 1 - a);
        hi |= uint64_t(1) << (n_ - 1 - b);
        lo |= uint64_t(1) << (n_ - 1 - c);
        lo |= uint64_t(1) << (n_ - 1 - d);
        const double ch = std::cos(theta / 2.0), sh = std::sin(theta / 2.0);
        for (int64_t i = 0; i < dim(); ++i) {
            const uint64_t u = static_cast<uint64_t>(i);
            if ((u & hi) == hi && (u & lo) == 0) {
                const uint64_t j = (u & ~hi) | lo;
                const cdouble a1100 = amp_(i);
                const cdouble a0011 = amp_(static_cast<int64_t>(j));
                amp_(i) = ch * a1100 + sh * a0011;
                amp_(static_cast<int64_t>(j)) = -sh * a1100 + ch * a0011;
            }
        }
    }

    std::vector<double> probabilities() const {
        std::vector<double> p(static_cast<size_t>(dim()));
        for (int64_t i = 0; i < dim(); ++i) p[static_cast<size_t>(i)] = std::norm(amp_(i));
        return p;
    }

    /// Born-rule sample of a computational-basis index.
    uint64_t sample(RandomStream& rng) const {
        const double u = rng.uniform() * amp_.squaredNorm();
        double acc = 0.0;
        for (int64_t i = 0; i < dim(); ++i) {
            acc += std::norm(amp_(i));
            if (u < acc) return static_cast<uint64_t>(i);
        }
        return static_cast<uint64_t>(dim() - 1);
    }

  private:
    void check_qubit(int q) const {
        if (q < 0 || q >= n_) throw ConfigError("qubit index out of range");
    }

    int n_;
    VectorXcd amp_;
};

}  // namespace mgqmc
