// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mgqmc/channel.hpp"
#include "mgqmc/estimator.hpp"
#include "mgqmc/overlap_kernel.hpp"
#include "mgqmc/shadow_data.hpp"

namespace mgqmc {

/// BareZero runs the randomized circuits directly on |0...0>, so the
/// estimated eigenvalues cover noise in the randomization and readout
/// segments. SpCompensated additionally runs the trial preparation circuit
/// with its initial Hadamard removed; because trial circuits fix the vacuum,
/// the ideal state is still |0...0> while the executed gates match the
/// overlap experiment, folding preparation noise into the calibration.
enum class CalibrationVariant { BareZero, SpCompensated };

inline std::string calibration_variant_name(CalibrationVariant v) {
    return v == CalibrationVariant::BareZero ? "bare-zero" : "sp-compensated";
}

struct CalibrationResult {
    int n = 0;
    CalibrationVariant variant = CalibrationVariant::BareZero;
    int n_circuits = 0;
    int shots_per_circuit = 0;
    std::uint64_t seed = 0;
    /// Estimated eigenvalue per even Majorana degree 2l, l = 0..n.
    std::vector<double> f_tilde;
    std::vector<double> std_error;

    ChannelSpectrum spectrum() const {
        ChannelSpectrum s;
        s.n = n;
        s.f = f_tilde;
        s.calibrated = true;
        s.validate();
        return s;
    }
};

/// Removes the leading Hadamard from a preparation circuit. The remainder
/// must fix |0...0>, which holds for the fanout/trial structure used here
/// because every control line is still 0 when its CNOT fires.
inline Circuit strip_leading_hadamard(const Circuit& prep) {
    if (prep.gates().empty() || prep.gates().front().kind != GateKind::H ||
        prep.gates().front().q[0] != 0)
        throw ConfigError("preparation circuit must start with a Hadamard on qubit 0");
    Circuit out(prep.num_qubits());
    for (size_t i = 1; i < prep.gates().size(); ++i) out.append(prep.gates()[i]);
    return out;
}

/// Estimates the even-degree channel eigenvalues from a dataset whose ideal
/// preparation is the vacuum. Per shot, the degree-2l coefficient of the
/// zero-mode kernel polynomial has expectation f_2l * binom(n,l) / 2^n, so
/// the sample mean rescaled by 2^n / binom(n,l) estimates f_2l.
inline CalibrationResult estimate_eigenvalues(const ShadowDataset& data) {
    const int n = data.n;
    OverlapKernel kernel(n, 0);
    const MatrixXcd phi_tf = kernel.identity_transform();
    const size_t n_circuits = data.samples.size();
    if (n_circuits == 0) throw ConfigError("empty dataset: need at least one circuit");

    std::vector<std::vector<cdouble>> per_circuit(static_cast<size_t>(n) + 1,
                                                  std::vector<cdouble>(n_circuits));
    parallel_for(n_circuits, [&](size_t i) {
        KernelWorkspace ws;
        std::vector<cdouble> coeffs, acc(static_cast<size_t>(n) + 1, cdouble(0.0));
        int shots = 0;
        for (const auto& [bits, count] : data.samples[i].counts) {
            kernel.coefficients(phi_tf, data.samples[i].q, bits, coeffs, ws);
            for (size_t l = 0; l < coeffs.size(); ++l)
                acc[l] += static_cast<double>(count) * coeffs[l];
            shots += count;
        }
        for (size_t l = 0; l <= static_cast<size_t>(n); ++l)
            per_circuit[l][i] = acc[l] / static_cast<double>(shots);
    });

    CalibrationResult out;
    out.n = n;
    out.n_circuits = static_cast<int>(n_circuits);
    out.shots_per_circuit = data.shots_per_circuit;
    out.seed = data.seed;
    out.f_tilde.resize(static_cast<size_t>(n) + 1);
    out.std_error.resize(static_cast<size_t>(n) + 1);
    for (int l = 0; l <= n; ++l) {
        const double scale = std::pow(2.0, n) / static_cast<double>(binomial(n, l));
        const OverlapEstimate est = aggregate_mean(per_circuit[static_cast<size_t>(l)]);
        out.f_tilde[static_cast<size_t>(l)] = scale * est.value.real();
        out.std_error[static_cast<size_t>(l)] = scale * est.std_error;
    }
    return out;
}

/// Collects a calibration dataset and estimates the channel eigenvalues.
/// `trial_prep` is only used for the SpCompensated variant and must be the
/// full preparation circuit including its leading Hadamard.
inline CalibrationResult run_calibration(int n, CalibrationVariant variant,
                                         const Circuit& trial_prep, int n_circuits, int shots,
                                         const PauliNoiseModel& noise, std::uint64_t seed) {
    Circuit prep(n);
    if (variant == CalibrationVariant::SpCompensated) {
        if (trial_prep.num_qubits() != n)
            throw ConfigError("preparation circuit qubit count mismatch");
        prep = strip_leading_hadamard(trial_prep);
    }
    PauliNoiseModel cal_noise = noise;
    cal_noise.state_preparation_noise = variant == CalibrationVariant::SpCompensated;
    const ShadowDataset data = collect_shadow_dataset(prep, n_circuits, shots, cal_noise, seed,
                                                      calibration_variant_name(variant));
    CalibrationResult out = estimate_eigenvalues(data);
    out.variant = variant;
    return out;
}

}  // namespace mgqmc
