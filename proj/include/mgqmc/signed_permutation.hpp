// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numeric>
#include <vector>

#include "mgqmc/common.hpp"
#include "mgqmc/rng.hpp"

namespace mgqmc {

/// Signed permutation matrix Q of size 2n x 2n acting on Majorana indices:
/// Q(perm[mu], mu) = signs[mu], all other entries zero.
struct SignedPermutation {
    int n = 0;
    std::vector<int> perm;
    std::vector<int> signs;

    SignedPermutation() = default;
    SignedPermutation(int n_qubits, std::vector<int> p, std::vector<int> s)
        : n(n_qubits), perm(std::move(p)), signs(std::move(s)) {
        validate();
    }

    static SignedPermutation identity(int n_qubits) {
        SignedPermutation q;
        q.n = n_qubits;
        q.perm.resize(static_cast<size_t>(2 * n_qubits));
        std::iota(q.perm.begin(), q.perm.end(), 0);
        q.signs.assign(static_cast<size_t>(2 * n_qubits), 1);
        return q;
    }

    /// Uniform draw from the group: Fisher-Yates permutation plus fair signs.
    static SignedPermutation random(int n_qubits, RandomStream& rng) {
        SignedPermutation q = identity(n_qubits);
        const int m = 2 * n_qubits;
        for (int i = m - 1; i > 0; --i) {
            const int j = static_cast<int>(rng.index(static_cast<uint64_t>(i) + 1));
            std::swap(q.perm[static_cast<size_t>(i)], q.perm[static_cast<size_t>(j)]);
        }
        for (int i = 0; i < m; ++i) q.signs[static_cast<size_t>(i)] = rng.uniform() < 0.5 ? 1 : -1;
        return q;
    }

    /// Full group for small n; size 2^{2n} (2n)!.
    static std::vector<SignedPermutation> enumerate(int n_qubits) {
        const int m = 2 * n_qubits;
        if (n_qubits < 1 || m > 6) throw ResourceError("group enumeration limited to n <= 3");
        std::vector<int> p(static_cast<size_t>(m));
        std::iota(p.begin(), p.end(), 0);
        std::vector<SignedPermutation> out;
        do {
            for (uint64_t bits = 0; bits < (uint64_t(1) << m); ++bits) {
                SignedPermutation q;
                q.n = n_qubits;
                q.perm = p;
                q.signs.resize(static_cast<size_t>(m));
                for (int i = 0; i < m; ++i)
                    q.signs[static_cast<size_t>(i)] = ((bits >> i) & 1u) ? -1 : 1;
                out.push_back(std::move(q));
            }
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }

    void validate() const {
        const size_t m = static_cast<size_t>(2 * n);
        if (n < 1 || perm.size() != m || signs.size() != m)
            throw ConfigError("signed permutation has inconsistent sizes");
        std::vector<bool> seen(m, false);
        for (int v : perm) {
            if (v < 0 || v >= 2 * n || seen[static_cast<size_t>(v)])
                throw ConfigError("invalid permutation");
            seen[static_cast<size_t>(v)] = true;
        }
        for (int s : signs)
            if (s != 1 && s != -1) throw ConfigError("signs must be +-1");
    }

    MatrixXd to_matrix() const {
        const int m = 2 * n;
        MatrixXd q = MatrixXd::Zero(m, m);
        for (int mu = 0; mu < m; ++mu)
            q(perm[static_cast<size_t>(mu)], mu) = static_cast<double>(signs[static_cast<size_t>(mu)]);
        return q;
    }

    double det() const {
        std::vector<bool> seen(perm.size(), false);
        int sign = 1;
        for (size_t start = 0; start < perm.size(); ++start) {
            if (seen[start]) continue;
            size_t len = 0, cur = start;
            while (!seen[cur]) {
                seen[cur] = true;
                cur = static_cast<size_t>(perm[cur]);
                ++len;
            }
            if (len % 2 == 0) sign = -sign;
        }
        for (int s : signs) sign *= s;
        return static_cast<double>(sign);
    }
};

}  // namespace mgqmc
