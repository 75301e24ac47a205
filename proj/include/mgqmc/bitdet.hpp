// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "mgqmc/common.hpp"

namespace mgqmc {

/// Occupation-number determinants as bit masks: bit p set means spin orbital p
/// is occupied and |m> = prod_{p in m, ascending} a_p^dag |vac>.
namespace bitdet {

using Mask = std::uint64_t;

/// (-1)^(number of occupied orbitals below p).
inline int parity_below(Mask m, int p) {
    const Mask lower = m & ((Mask{1} << p) - 1);
    return (std::popcount(lower) & 1) ? -1 : 1;
}

/// Apply a_p^dag; returns sign in {-1, +1} and updates the mask, or 0 if annihilated.
inline int apply_creation(Mask& m, int p) {
    if (m & (Mask{1} << p)) return 0;
    const int s = parity_below(m, p);
    m |= Mask{1} << p;
    return s;
}

inline int apply_annihilation(Mask& m, int p) {
    if (!(m & (Mask{1} << p))) return 0;
    const int s = parity_below(m, p);
    m &= ~(Mask{1} << p);
    return s;
}

/// All masks over n orbitals with exactly zeta bits set, ascending.
inline std::vector<Mask> enumerate_sector(int n, int zeta) {
    std::vector<Mask> out;
    for (Mask m = 0; m < (Mask{1} << n); ++m)
        if (std::popcount(m) == zeta) out.push_back(m);
    return out;
}

/// Dense rank-4 tensor with value type T; index order matches V(p,q,r,s).
template <typename T>
class Tensor4 {
  public:
    Tensor4() = default;
    explicit Tensor4(int n) : n_(n), v_(static_cast<std::size_t>(n) * n * n * n, T{}) {}

    int dim() const { return n_; }
    T& operator()(int p, int q, int r, int s) { return v_[idx(p, q, r, s)]; }
    const T& operator()(int p, int q, int r, int s) const { return v_[idx(p, q, r, s)]; }

  private:
    std::size_t idx(int p, int q, int r, int s) const {
        return ((static_cast<std::size_t>(p) * n_ + q) * n_ + r) * n_ + s;
    }
    int n_ = 0;
    std::vector<T> v_;
};

/// Accumulate sum_pq h(p,q) a_p^dag a_q |m> into a mask -> coefficient map.
template <typename Scalar, typename Derived>
void apply_one_body(const Eigen::MatrixBase<Derived>& h, Mask m, Scalar weight,
                    std::map<Mask, Scalar>& out) {
    const int n = static_cast<int>(h.rows());
    for (int q = 0; q < n; ++q) {
        Mask m1 = m;
        const int s1 = apply_annihilation(m1, q);
        if (s1 == 0) continue;
        for (int p = 0; p < n; ++p) {
            if (h(p, q) == Scalar{}) continue;
            Mask m2 = m1;
            const int s2 = apply_creation(m2, p);
            if (s2 == 0) continue;
            out[m2] += weight * Scalar(h(p, q)) * static_cast<double>(s1 * s2);
        }
    }
}

/// Accumulate (1/2) sum_pqrs V(p,q,r,s) a_p^dag a_q^dag a_s a_r |m>.
template <typename Scalar>
void apply_two_body(const Tensor4<Scalar>& V, Mask m, Scalar weight, std::map<Mask, Scalar>& out) {
    const int n = V.dim();
    for (int r = 0; r < n; ++r) {
        Mask m1 = m;
        const int s1 = apply_annihilation(m1, r);
        if (s1 == 0) continue;
        for (int s = 0; s < n; ++s) {
            Mask m2 = m1;
            const int s2 = apply_annihilation(m2, s);
            if (s2 == 0) continue;
            for (int q = 0; q < n; ++q) {
                Mask m3 = m2;
                const int s3 = apply_creation(m3, q);
                if (s3 == 0) continue;
                for (int p = 0; p < n; ++p) {
                    const Scalar v = V(p, q, r, s);
                    if (v == Scalar{}) continue;
                    Mask m4 = m3;
                    const int s4 = apply_creation(m4, p);
                    if (s4 == 0) continue;
                    out[m4] += weight * v * (0.5 * s1 * s2 * s3 * s4);
                }
            }
        }
    }
}

}  // namespace bitdet
}  // namespace mgqmc
