// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include "mgqmc/circuit.hpp"
#include "mgqmc/statevector.hpp"

namespace mgqmc {

/// Named 4-qubit trial ansatz built from a double-excitation gate plus
/// vacuum-fixing basis permutations.
struct TrialSpec {
    std::string ansatz = "h2_de";
    int n = 4;
    int zeta = 2;
    double theta = 0.0;
};

/// Occupation mask of the lowest-zeta-orbital reference determinant.
inline std::uint64_t reference_mask(int zeta) {
    return (std::uint64_t{1} << zeta) - 1;
}

/// Basis index of the reference determinant: zeta leading ones.
inline std::uint64_t reference_basis_index(int n, int zeta) {
    return ((std::uint64_t{1} << zeta) - 1) << (n - zeta);
}

/// "h2_de": a double-excitation rotation between |1100> and |0011>.
/// "nv_de": the same rotation followed by a swap of qubits 1 and 3, turning
/// the pair into the open-shell configurations |1001> and |0110>.
inline Circuit build_trial_circuit(const TrialSpec& spec) {
    if (spec.n != 4 || spec.zeta != 2)
        throw ConfigError("built-in trial ansatze are defined for n = 4, zeta = 2");
    Circuit c(spec.n);
    c.u_de(spec.theta, 0, 1, 2, 3);
    if (spec.ansatz == "h2_de") return c;
    if (spec.ansatz == "nv_de") {
        c.swap(1, 3);
        return c;
    }
    throw ConfigError("unknown trial ansatz: " + spec.ansatz);
}

/// Hadamard plus CNOT fan-out, mapping |0...0> to
/// (|0...0> + |1...1 0...0>)/sqrt(2) with zeta leading ones.
inline Circuit superposition_prefix(int n, int zeta) {
    if (zeta < 1 || zeta > n) throw ConfigError("zeta outside [1, n]");
    Circuit c(n);
    c.h(0);
    for (int k = 1; k < zeta; ++k) c.cnot(0, k);
    return c;
}

/// Checks the two trial-circuit requirements: the vacuum is fixed with unit
/// amplitude, and the reference determinant stays inside the
/// zeta-particle sector.
inline void validate_trial_circuit(const Circuit& trial, int zeta) {
    const int n = trial.num_qubits();
    if (zeta < 1 || zeta > n) throw ConfigError("zeta outside [1, n]");
    const StateVector vac = trial.run(StateVector(n));
    if (std::abs(vac.amplitude(0) - 1.0) > 1e-10)
        throw ConfigError("invalid trial circuit: it does not fix the vacuum");
    const StateVector psi = trial.run(StateVector::from_basis_index(n, reference_basis_index(n, zeta)));
    for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(psi.dim()); ++b)
        if (std::popcount(b) != zeta && std::abs(psi.amplitude(b)) > 1e-12)
            throw ConfigError("invalid trial circuit: it leaks out of the particle sector");
}

/// Trial state |Psi_T> = V_T |reference>.
inline StateVector trial_state(const Circuit& trial, int zeta) {
    validate_trial_circuit(trial, zeta);
    return trial.run(
        StateVector::from_basis_index(trial.num_qubits(), reference_basis_index(trial.num_qubits(), zeta)));
}

/// Full preparation circuit: superposition prefix followed by the trial.
inline Circuit build_preparation_circuit(const Circuit& trial, int zeta) {
    validate_trial_circuit(trial, zeta);
    Circuit c = superposition_prefix(trial.num_qubits(), zeta);
    for (const Gate& g : trial.gates()) c.append(g);
    return c;
}

/// Exact (|0...0> + |Psi_T>)/sqrt(2), the state the shadow circuits measure.
inline StateVector prepare_superposition_state(const Circuit& trial, int zeta) {
    return build_preparation_circuit(trial, zeta).run(StateVector(trial.num_qubits()));
}

}  // namespace mgqmc
