// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mgqmc/common.hpp"

namespace mgqmc {

/// Word over {I, X, Y, Z}; qubit 0 is the leftmost letter and the most
/// significant bit of a computational basis index.
class PauliString {
  public:
    enum Op : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

    PauliString() = default;
    explicit PauliString(int n) : ops_(n, I) {}
    explicit PauliString(std::string_view word) {
        ops_.reserve(word.size());
        for (char c : word) {
            switch (c) {
                case 'I': ops_.push_back(I); break;
                case 'X': ops_.push_back(X); break;
                case 'Y': ops_.push_back(Y); break;
                case 'Z': ops_.push_back(Z); break;
                default: throw ConfigError("invalid Pauli letter");
            }
        }
    }

    int size() const { return static_cast<int>(ops_.size()); }
    Op op(int q) const { return ops_[static_cast<size_t>(q)]; }
    void set(int q, Op p) { ops_[static_cast<size_t>(q)] = p; }

    bool operator<(const PauliString& o) const { return ops_ < o.ops_; }
    bool operator==(const PauliString& o) const { return ops_ == o.ops_; }

    std::string to_string() const {
        std::string s;
        s.reserve(ops_.size());
        for (auto p : ops_) s.push_back("IXYZ"[p]);
        return s;
    }

    bool is_identity() const {
        for (auto p : ops_)
            if (p != I) return false;
        return true;
    }

    /// Dense 2^n x 2^n matrix; intended for oracle checks at small n.
    MatrixXcd to_dense() const {
        const int n = size();
        MatrixXcd out = MatrixXcd::Identity(1, 1);
        for (int q = 0; q < n; ++q) {
            Eigen::Matrix2cd g;
            switch (ops_[q]) {
                case I: g << 1, 0, 0, 1; break;
                case X: g << 0, 1, 1, 0; break;
                case Y: g << 0, cdouble(0, -1), cdouble(0, 1), 0; break;
                case Z: g << 1, 0, 0, -1; break;
            }
            MatrixXcd next(out.rows() * 2, out.cols() * 2);
            for (Eigen::Index r = 0; r < out.rows(); ++r)
                for (Eigen::Index c = 0; c < out.cols(); ++c)
                    next.block(2 * r, 2 * c, 2, 2) = out(r, c) * g;
            out.swap(next);
        }
        return out;
    }

  private:
    std::vector<Op> ops_;
};

/// Product of two single-qubit Paulis: returns (phase, result) with
/// a*b = phase * result and phase in {1, i, -1, -i}.
inline std::pair<cdouble, PauliString::Op> pauli_mul_1q(PauliString::Op a, PauliString::Op b) {
    using Op = PauliString::Op;
    if (a == Op::I) return {1.0, b};
    if (b == Op::I) return {1.0, a};
    if (a == b) return {1.0, Op::I};
    // XY = iZ, YZ = iX, ZX = iY; reversed order flips the sign.
    static constexpr Op third[4][4] = {
        {Op::I, Op::I, Op::I, Op::I},
        {Op::I, Op::I, Op::Z, Op::Y},
        {Op::I, Op::Z, Op::I, Op::X},
        {Op::I, Op::Y, Op::X, Op::I},
    };
    const bool forward = (a == Op::X && b == Op::Y) || (a == Op::Y && b == Op::Z) || (a == Op::Z && b == Op::X);
    return {forward ? cdouble(0, 1) : cdouble(0, -1), third[a][b]};
}

inline std::pair<cdouble, PauliString> pauli_mul(const PauliString& a, const PauliString& b) {
    PauliString out(a.size());
    cdouble phase = 1.0;
    for (int q = 0; q < a.size(); ++q) {
        auto [ph, op] = pauli_mul_1q(a.op(q), b.op(q));
        phase *= ph;
        out.set(q, op);
    }
    return {phase, out};
}

/// Majorana operator gamma_mu (mu = 0..2n-1) under the Jordan-Wigner
/// convention gamma_{2j} = Z_0..Z_{j-1} X_j, gamma_{2j+1} = Z_0..Z_{j-1} Y_j.
inline PauliString majorana_string(int n, int mu) {
    PauliString s(n);
    const int j = mu / 2;
    for (int k = 0; k < j; ++k) s.set(k, PauliString::Z);
    s.set(j, (mu % 2 == 0) ? PauliString::X : PauliString::Y);
    return s;
}

/// Sum of Pauli terms with complex coefficients, kept in a deterministic order.
class PauliPolynomial {
  public:
    void add(const PauliString& s, cdouble c) {
        auto [it, inserted] = terms_.try_emplace(s, c);
        if (!inserted) it->second += c;
    }

    void prune(double tol = 1e-14) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (std::abs(it->second) <= tol)
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    const std::map<PauliString, cdouble>& terms() const { return terms_; }

    MatrixXcd to_dense(int n) const {
        const std::int64_t dim = std::int64_t{1} << n;
        MatrixXcd out = MatrixXcd::Zero(dim, dim);
        for (const auto& [s, c] : terms_) out += c * s.to_dense();
        return out;
    }

  private:
    std::map<PauliString, cdouble> terms_;
};

}  // namespace mgqmc
