// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "mgqmc/channel.hpp"
#include "mgqmc/overlap_kernel.hpp"
#include "mgqmc/shadow_data.hpp"

namespace mgqmc {

/// PerSector inverts the channel coefficient by coefficient (exactly
/// unbiased). Factored pulls the phi-independent weight sum_l f_2l^{-1} b_2l
/// in front of the plain sample mean of q(1); overlap ratios formed from
/// factored estimates then cancel the channel weights identically, which is
/// the arithmetic behind their noise resilience.
enum class EstimatorForm { PerSector, Factored };

enum class Aggregation { Mean, MedianOfMeans };

struct OverlapEstimate {
    cdouble value{0.0, 0.0};
    double std_error = 0.0;
    int n_circuits = 0;
};

/// Mean and combined standard error sqrt((Var Re + Var Im)/N) of complex
/// per-circuit values.
inline OverlapEstimate aggregate_mean(const std::vector<cdouble>& values) {
    OverlapEstimate out;
    out.n_circuits = static_cast<int>(values.size());
    if (values.empty()) throw ConfigError("cannot aggregate an empty estimate set");
    cdouble sum = 0.0;
    for (cdouble v : values) sum += v;
    out.value = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double var = 0.0;
        for (cdouble v : values) var += std::norm(v - out.value);
        var /= static_cast<double>(values.size() - 1);
        out.std_error = std::sqrt(var / static_cast<double>(values.size()));
    }
    return out;
}

inline OverlapEstimate aggregate_median_of_means(const std::vector<cdouble>& values, int batches) {
    if (batches < 1) throw ConfigError("median-of-means needs at least one batch");
    if (values.empty()) throw ConfigError("cannot aggregate an empty estimate set");
    batches = std::min<int>(batches, static_cast<int>(values.size()));
    std::vector<double> re, im;
    re.reserve(static_cast<size_t>(batches));
    im.reserve(static_cast<size_t>(batches));
    const size_t count = values.size();
    for (int k = 0; k < batches; ++k) {
        const size_t begin = count * static_cast<size_t>(k) / static_cast<size_t>(batches);
        const size_t end = count * (static_cast<size_t>(k) + 1) / static_cast<size_t>(batches);
        cdouble sum = 0.0;
        for (size_t i = begin; i < end; ++i) sum += values[i];
        const cdouble mean = sum / static_cast<double>(end - begin);
        re.push_back(mean.real());
        im.push_back(mean.imag());
    }
    auto median = [](std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        const size_t m = v.size() / 2;
        return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
    };
    OverlapEstimate out;
    out.n_circuits = static_cast<int>(values.size());
    std::vector<double> re_copy = re, im_copy = im;
    out.value = cdouble(median(re_copy), median(im_copy));
    if (batches > 1) {
        double var = 0.0;
        const cdouble batch_mean =
            cdouble(std::accumulate(re.begin(), re.end(), 0.0) / batches,
                    std::accumulate(im.begin(), im.end(), 0.0) / batches);
        for (int k = 0; k < batches; ++k)
            var += std::norm(cdouble(re[static_cast<size_t>(k)], im[static_cast<size_t>(k)]) -
                             batch_mean);
        var /= static_cast<double>(batches - 1);
        out.std_error = std::sqrt(var / static_cast<double>(batches));
    }
    return out;
}

/// Overlap estimation from a shadow dataset: per-shot kernel coefficients,
/// shot means within each circuit, then aggregation across circuits.
class ShadowOverlapEstimator {
  public:
    ShadowOverlapEstimator(const ShadowDataset& data, ChannelSpectrum spectrum, int zeta,
                           EstimatorForm form = EstimatorForm::PerSector,
                           Aggregation aggregation = Aggregation::Mean, int mom_batches = 16)
        : ShadowOverlapEstimator(data.n, std::move(spectrum), zeta, form, aggregation,
                                 mom_batches) {
        if (data.samples.empty()) throw ConfigError("empty dataset: need at least one circuit");
        data_ = &data;
    }

    /// Dataset-free variant exposing only shot_value, for exhaustive
    /// expectation checks.
    ShadowOverlapEstimator(int n, ChannelSpectrum spectrum, int zeta,
                           EstimatorForm form = EstimatorForm::PerSector,
                           Aggregation aggregation = Aggregation::Mean, int mom_batches = 16)
        : spectrum_(std::move(spectrum)),
          kernel_(n, zeta),
          form_(form),
          aggregation_(aggregation),
          mom_batches_(mom_batches) {
        if (spectrum_.n != n) throw ConfigError("spectrum dimension mismatch");
        spectrum_.check_conditioning(zeta);
        if (form_ == EstimatorForm::Factored) {
            factored_prefactor_ = 0.0;
            for (int l = 0; l <= n; ++l)
                factored_prefactor_ +=
                    b_coefficient(n, zeta, l) / spectrum_.f[static_cast<size_t>(l)];
        }
    }

    const OverlapKernel& kernel() const { return kernel_; }
    const ChannelSpectrum& spectrum() const { return spectrum_; }
    EstimatorForm form() const { return form_; }

    /// Per-circuit shot-mean estimates of <trial|phi> for the first
    /// `prefix` circuits (0 means all).
    std::vector<cdouble> per_circuit_values(const SlaterDeterminant& phi, size_t prefix = 0) const {
        return per_circuit_values(kernel_.phi_transform(phi), prefix);
    }

    std::vector<cdouble> per_circuit_values(const MatrixXcd& phi_tf, size_t prefix = 0) const {
        if (data_ == nullptr) throw ConfigError("estimator was constructed without a dataset");
        const size_t count =
            prefix == 0 ? data_->samples.size() : std::min(prefix, data_->samples.size());
        std::vector<cdouble> values(count);
        parallel_for(count, [&](size_t i) {
            KernelWorkspace ws;
            std::vector<cdouble> coeffs;
            values[i] = circuit_value(phi_tf, data_->samples[i], ws, coeffs);
        });
        return values;
    }

    OverlapEstimate estimate(const SlaterDeterminant& phi, size_t prefix = 0) const {
        return aggregate(per_circuit_values(phi, prefix));
    }

    OverlapEstimate estimate(const MatrixXcd& phi_tf, size_t prefix = 0) const {
        return aggregate(per_circuit_values(phi_tf, prefix));
    }

    OverlapEstimate aggregate(const std::vector<cdouble>& values) const {
        return aggregation_ == Aggregation::Mean ? aggregate_mean(values)
                                                 : aggregate_median_of_means(values, mom_batches_);
    }

    /// Single-shot estimate for one (Q, outcome) pair; the expectation of
    /// this value over circuits and outcomes is the exact overlap.
    cdouble shot_value(const MatrixXcd& phi_tf, const SignedPermutation& q,
                       std::uint64_t bits) const {
        KernelWorkspace ws;
        if (form_ == EstimatorForm::Factored)
            return 2.0 * factored_prefactor_ * kernel_.evaluate_at_one(phi_tf, q, bits, ws);
        std::vector<cdouble> coeffs;
        kernel_.coefficients(phi_tf, q, bits, coeffs, ws);
        cdouble value = 0.0;
        for (size_t l = 0; l < coeffs.size(); ++l) value += coeffs[l] / spectrum_.f[l];
        return 2.0 * value;
    }

  private:
    cdouble circuit_value(const MatrixXcd& phi_tf, const ShadowSample& sample, KernelWorkspace& ws,
                          std::vector<cdouble>& coeffs) const {
        cdouble acc = 0.0;
        int shots = 0;
        for (const auto& [bits, count] : sample.counts) {
            cdouble per_shot;
            if (form_ == EstimatorForm::Factored) {
                per_shot = 2.0 * factored_prefactor_ *
                           kernel_.evaluate_at_one(phi_tf, sample.q, bits, ws);
            } else {
                kernel_.coefficients(phi_tf, sample.q, bits, coeffs, ws);
                per_shot = 0.0;
                for (size_t l = 0; l < coeffs.size(); ++l)
                    per_shot += coeffs[l] / spectrum_.f[l];
                per_shot *= 2.0;
            }
            acc += static_cast<double>(count) * per_shot;
            shots += count;
        }
        return acc / static_cast<double>(shots);
    }

    const ShadowDataset* data_ = nullptr;
    ChannelSpectrum spectrum_;
    OverlapKernel kernel_;
    EstimatorForm form_;
    Aggregation aggregation_;
    int mom_batches_;
    double factored_prefactor_ = 0.0;
};

}  // namespace mgqmc
