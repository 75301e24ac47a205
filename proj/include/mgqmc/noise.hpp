// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <string>

#include "mgqmc/circuit.hpp"

namespace mgqmc {

/// Stochastic Pauli error description for the simulated device. Gate errors
/// are inserted immediately after each gate on every qubit the gate touches;
/// readout errors flip measured bits independently. The optional global
/// depolarizing channel acts once, right before measurement. The coherent
/// over-rotation knob scales every rotation angle and is not a Pauli channel;
/// it exists to exercise the failure mode that calibration cannot repair.
struct PauliNoiseModel {
    std::array<double, 3> p1{0.0, 0.0, 0.0};  // (pX, pY, pZ) after single-qubit gates
    std::array<double, 3> p2{0.0, 0.0, 0.0};  // (pX, pY, pZ) per qubit after wider gates
    double readout_flip = 0.0;
    double depolarizing_pre_measurement = 0.0;
    double coherent_overrotation = 0.0;
    bool state_preparation_noise = false;

    void validate() const {
        auto check_triple = [](const std::array<double, 3>& p) {
            double sum = 0.0;
            for (double v : p) {
                if (v < 0.0 || v > 1.0) throw ConfigError("Pauli error rate outside [0,1]");
                sum += v;
            }
            if (sum > 1.0) throw ConfigError("Pauli error rates sum above 1");
        };
        check_triple(p1);
        check_triple(p2);
        if (readout_flip < 0.0 || readout_flip > 1.0) throw ConfigError("readout flip rate outside [0,1]");
        if (depolarizing_pre_measurement < 0.0 || depolarizing_pre_measurement > 1.0)
            throw ConfigError("depolarizing strength outside [0,1]");
    }

    bool has_gate_noise() const {
        return p1[0] + p1[1] + p1[2] + p2[0] + p2[1] + p2[2] > 0.0 || coherent_overrotation != 0.0;
    }

    bool enabled() const {
        return has_gate_noise() || readout_flip > 0.0 || depolarizing_pre_measurement > 0.0;
    }
};

using CountsMap = std::map<uint64_t, int>;

inline std::string bits_to_string(int n, uint64_t index) {
    std::string s(static_cast<size_t>(n), '0');
    for (int q = 0; q < n; ++q)
        if ((index >> (n - 1 - q)) & 1u) s[static_cast<size_t>(q)] = '1';
    return s;
}

inline uint64_t string_to_bits(const std::string& s) {
    uint64_t index = 0;
    for (char c : s) {
        index <<= 1;
        if (c == '1')
            index |= 1u;
        else if (c != '0')
            throw ConfigError("bitstring may contain only 0 and 1");
    }
    return index;
}

namespace detail {

inline void insert_pauli_errors(StateVector& psi, const Gate& g, const std::array<double, 3>& p,
                                RandomStream& rng) {
    if (p[0] + p[1] + p[2] <= 0.0) return;
    const int arity = g.arity();
    for (int k = 0; k < arity; ++k) {
        const double u = rng.uniform();
        if (u < p[0])
            psi.apply_x(g.q[k]);
        else if (u < p[0] + p[1])
            psi.apply_y(g.q[k]);
        else if (u < p[0] + p[1] + p[2])
            psi.apply_z(g.q[k]);
    }
}

inline void apply_segment_noisy(StateVector& psi, const Circuit& c, const PauliNoiseModel& noise,
                                bool with_gate_noise, RandomStream& rng) {
    for (const auto& g : c.gates()) {
        if (with_gate_noise && noise.coherent_overrotation != 0.0 && g.is_rotation()) {
            Gate scaled = g;
            scaled.angle *= 1.0 + noise.coherent_overrotation;
            c.apply_gate(psi, scaled);
        } else {
            c.apply_gate(psi, g);
        }
        if (with_gate_noise) insert_pauli_errors(psi, g, g.arity() == 1 ? noise.p1 : noise.p2, rng);
    }
}

}  // namespace detail

/// Samples computational-basis counts for prep followed by main. The
/// noiseless path prepares once and Born-samples; any gate noise forces a
/// fresh trajectory per shot. Gate errors inside the preparation segment are
/// controlled by the state_preparation_noise toggle.
inline CountsMap sample_counts(const Circuit& prep, const Circuit& main, int shots,
                               const PauliNoiseModel& noise, RandomStream& rng) {
    if (prep.num_qubits() != main.num_qubits()) throw ConfigError("prep/main qubit count mismatch");
    if (shots < 1) throw ConfigError("shots must be positive");
    noise.validate();
    const int n = prep.num_qubits();
    const uint64_t mask = (n == 64) ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);

    CountsMap counts;
    auto record = [&](uint64_t bits) {
        if (noise.readout_flip > 0.0) {
            for (int q = 0; q < n; ++q)
                if (rng.uniform() < noise.readout_flip) bits ^= uint64_t(1) << (n - 1 - q);
        }
        ++counts[bits & mask];
    };

    if (!noise.has_gate_noise()) {
        StateVector psi(n);
        prep.apply(psi);
        main.apply(psi);
        std::vector<double> cumulative = psi.probabilities();
        for (size_t i = 1; i < cumulative.size(); ++i) cumulative[i] += cumulative[i - 1];
        const double total = cumulative.back();
        for (int s = 0; s < shots; ++s) {
            uint64_t bits;
            if (noise.depolarizing_pre_measurement > 0.0 &&
                rng.uniform() < noise.depolarizing_pre_measurement) {
                bits = rng.next_u64() & mask;
            } else {
                const double u = rng.uniform() * total;
                const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
                bits = static_cast<uint64_t>(std::min<ptrdiff_t>(
                    std::distance(cumulative.begin(), it),
                    static_cast<ptrdiff_t>(cumulative.size()) - 1));
            }
            record(bits);
        }
        return counts;
    }

    for (int s = 0; s < shots; ++s) {
        StateVector psi(n);
        detail::apply_segment_noisy(psi, prep, noise, noise.state_preparation_noise, rng);
        detail::apply_segment_noisy(psi, main, noise, true, rng);
        uint64_t bits;
        if (noise.depolarizing_pre_measurement > 0.0 &&
            rng.uniform() < noise.depolarizing_pre_measurement)
            bits = rng.next_u64() & mask;
        else
            bits = psi.sample(rng);
        record(bits);
    }
    return counts;
}

/// Dense density-matrix evolution of the same noisy process, usable as an
/// exact oracle for n <= 3. Depolarizing and readout effects are folded into
/// the returned outcome distribution.
inline VectorXd noisy_outcome_distribution(const Circuit& prep, const Circuit& main,
                                           const PauliNoiseModel& noise) {
    noise.validate();
    if (noise.coherent_overrotation != 0.0)
        throw ConfigError("dense oracle covers Pauli channels only");
    const int n = prep.num_qubits();
    if (n > 3) throw ResourceError("dense noise oracle limited to n <= 3");
    const int64_t dim = int64_t(1) << n;

    MatrixXcd rho = MatrixXcd::Zero(dim, dim);
    rho(0, 0) = 1.0;

    auto gate_dense = [&](const Gate& g) {
        Circuit one(n);
        MatrixXcd u(dim, dim);
        for (int64_t c = 0; c < dim; ++c) {
            StateVector psi = StateVector::from_basis_index(n, static_cast<uint64_t>(c));
            one.apply_gate(psi, g);
            u.col(c) = psi.amplitudes();
        }
        return u;
    };
    auto pauli_1q_dense = [&](int q, PauliString::Op op) {
        PauliString p(n);
        p.set(q, op);
        return p.to_dense();
    };
    auto apply_channel_after_gate = [&](const Gate& g, const std::array<double, 3>& p) {
        if (p[0] + p[1] + p[2] <= 0.0) return;
        for (int k = 0; k < g.arity(); ++k) {
            MatrixXcd out = (1.0 - p[0] - p[1] - p[2]) * rho;
            const PauliString::Op ops[3] = {PauliString::X, PauliString::Y, PauliString::Z};
            for (int j = 0; j < 3; ++j) {
                if (p[static_cast<size_t>(j)] <= 0.0) continue;
                const MatrixXcd pm = pauli_1q_dense(g.q[k], ops[j]);
                out += p[static_cast<size_t>(j)] * pm * rho * pm.adjoint();
            }
            rho = out;
        }
    };

    for (const auto& g : prep.gates()) {
        const MatrixXcd u = gate_dense(g);
        rho = u * rho * u.adjoint();
        if (noise.state_preparation_noise)
            apply_channel_after_gate(g, g.arity() == 1 ? noise.p1 : noise.p2);
    }
    for (const auto& g : main.gates()) {
        const MatrixXcd u = gate_dense(g);
        rho = u * rho * u.adjoint();
        apply_channel_after_gate(g, g.arity() == 1 ? noise.p1 : noise.p2);
    }

    if (noise.depolarizing_pre_measurement > 0.0) {
        const double p = noise.depolarizing_pre_measurement;
        rho = (1.0 - p) * rho +
              p * MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
    }

    VectorXd probs(dim);
    for (int64_t i = 0; i < dim; ++i) probs(i) = std::real(rho(i, i));

    if (noise.readout_flip > 0.0) {
        const double r = noise.readout_flip;
        for (int q = 0; q < n; ++q) {
            VectorXd next = VectorXd::Zero(dim);
            const int64_t bit = int64_t(1) << (n - 1 - q);
            for (int64_t i = 0; i < dim; ++i) {
                next(i) += (1.0 - r) * probs(i);
                next(i ^ bit) += r * probs(i);
            }
            probs = next;
        }
    }
    return probs;
}

}  // namespace mgqmc
