// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "mgqmc/estimator.hpp"
#include "mgqmc/local_energy.hpp"
#include "mgqmc/slater.hpp"

namespace mgqmc {

/// Determinant minor det(cols[S, :]) with the rows of S taken ascending.
inline cdouble occupation_minor(const MatrixXcd& cols, bitdet::Mask occupation) {
    const int zeta = static_cast<int>(cols.cols());
    if (std::popcount(occupation) != zeta) return 0.0;
    MatrixXcd minor(zeta, zeta);
    int row = 0;
    for (int j = 0; j < cols.rows(); ++j)
        if ((occupation >> j) & 1u) minor.row(row++) = cols.row(j);
    return minor.determinant();
}

/// Source of trial-state overlaps <T|phi> for arbitrary walker column
/// matrices. The column matrix need not be orthonormal; overlaps follow the
/// minors multilinearly.
class TrialBackend {
  public:
    virtual ~TrialBackend() = default;
    virtual std::string name() const = 0;
    virtual cdouble overlap(const MatrixXcd& cols) const = 0;

    /// Reference/singles/doubles overlaps over the walker's own orthonormal
    /// basis u, built by in-place column substitution.
    virtual OverlapTable overlap_table(const MatrixXcd& u, int zeta) const {
        const int n = static_cast<int>(u.rows());
        OverlapTable t;
        const MatrixXcd ref = u.leftCols(zeta);
        t.ref = overlap(ref);
        t.singles.resize(n - zeta, zeta);
        MatrixXcd work = ref;
        for (int a = zeta; a < n; ++a)
            for (int i = 0; i < zeta; ++i) {
                work = ref;
                work.col(i) = u.col(a);
                t.singles(a - zeta, i) = overlap(work);
            }
        const auto opairs = ascending_pairs(0, zeta);
        const auto vpairs = ascending_pairs(zeta, n);
        t.doubles.resize(static_cast<int>(vpairs.size()), static_cast<int>(opairs.size()));
        for (size_t vp = 0; vp < vpairs.size(); ++vp)
            for (size_t op = 0; op < opairs.size(); ++op) {
                work = ref;
                work.col(opairs[op].first) = u.col(vpairs[vp].first);
                work.col(opairs[op].second) = u.col(vpairs[vp].second);
                t.doubles(static_cast<int>(vp), static_cast<int>(op)) = overlap(work);
            }
        return t;
    }
};

/// Oracle backend holding the trial statevector exactly.
class ExactBackend final : public TrialBackend {
  public:
    explicit ExactBackend(StateVector trial) : trial_(std::move(trial)) {}

    std::string name() const override { return "exact-statevector"; }

    cdouble overlap(const MatrixXcd& cols) const override {
        const int n = trial_.num_qubits();
        if (cols.rows() != n) throw ConfigError("orbital count mismatch");
        cdouble acc = 0.0;
        for (bitdet::Mask s : bitdet::enumerate_sector(n, static_cast<int>(cols.cols()))) {
            const cdouble amp = trial_.amplitude(orbital_mask_to_basis_index(n, s));
            if (amp == cdouble{}) continue;
            acc += std::conj(amp) * occupation_minor(cols, s);
        }
        return acc;
    }

    const StateVector& trial() const { return trial_; }

  private:
    StateVector trial_;
};

/// Backend estimating every overlap from one fixed shadow dataset. The
/// per-sample estimate is linear in the target determinant, so the column
/// factorization scale commutes with the mean over circuits.
class ShadowBackend final : public TrialBackend {
  public:
    ShadowBackend(std::shared_ptr<const ShadowDataset> data, ChannelSpectrum spectrum, int zeta,
                  EstimatorForm form = EstimatorForm::Factored,
                  Aggregation aggregation = Aggregation::Mean, int mom_batches = 16)
        : data_(std::move(data)),
          estimator_(*data_, std::move(spectrum), zeta, form, aggregation, mom_batches),
          zeta_(zeta) {}

    std::string name() const override { return "matchgate-shadows"; }

    cdouble overlap(const MatrixXcd& cols) const override {
        if (cols.cols() != zeta_) throw ConfigError("walker column count mismatch");
        const ScaledDeterminant sd = factorize_columns(data_->n, cols);
        return sd.scale * estimator_.estimate(sd.det).value;
    }

    const ShadowOverlapEstimator& estimator() const { return estimator_; }
    const ShadowDataset& dataset() const { return *data_; }

  private:
    std::shared_ptr<const ShadowDataset> data_;
    ShadowOverlapEstimator estimator_;
    int zeta_;
};

/// Backend holding tabulated trial amplitudes <T|S> over the whole
/// zeta-particle basis; exponential in n and therefore gated.
class TabulatedBackend final : public TrialBackend {
  public:
    TabulatedBackend(int n, int zeta, std::map<bitdet::Mask, cdouble> amplitudes)
        : n_(n), zeta_(zeta), amplitudes_(std::move(amplitudes)) {
        if (n > 6) throw ResourceError("tabulated backend gated to n <= 6");
        if (amplitudes_.size() != static_cast<size_t>(binomial(n, zeta)))
            throw ConfigError("tabulated backend needs one amplitude per sector determinant");
    }

    /// Tabulates a source backend once; with a shadow source this turns
    /// per-walker estimation into pure post-processing of fixed numbers.
    static TabulatedBackend from_backend(const TrialBackend& source, int n, int zeta) {
        std::map<bitdet::Mask, cdouble> amps;
        for (bitdet::Mask s : bitdet::enumerate_sector(n, zeta)) {
            MatrixXcd cols = MatrixXcd::Zero(n, zeta);
            int col = 0;
            for (int j = 0; j < n; ++j)
                if ((s >> j) & 1u) cols(j, col++) = 1.0;
            amps[s] = source.overlap(cols);
        }
        return TabulatedBackend(n, zeta, std::move(amps));
    }

    static TabulatedBackend from_statevector(const StateVector& trial, int zeta) {
        const int n = trial.num_qubits();
        std::map<bitdet::Mask, cdouble> amps;
        for (bitdet::Mask s : bitdet::enumerate_sector(n, zeta))
            amps[s] = std::conj(trial.amplitude(orbital_mask_to_basis_index(n, s)));
        return TabulatedBackend(n, zeta, std::move(amps));
    }

    std::string name() const override { return "tabulated-basis"; }

    cdouble overlap(const MatrixXcd& cols) const override {
        if (cols.rows() != n_ || cols.cols() != zeta_)
            throw ConfigError("walker dimensions mismatch");
        cdouble acc = 0.0;
        for (const auto& [s, amp] : amplitudes_) acc += amp * occupation_minor(cols, s);
        return acc;
    }

    const std::map<bitdet::Mask, cdouble>& amplitudes() const { return amplitudes_; }

  private:
    int n_;
    int zeta_;
    std::map<bitdet::Mask, cdouble> amplitudes_;
};

}  // namespace mgqmc
