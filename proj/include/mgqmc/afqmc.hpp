// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "mgqmc/rng.hpp"
#include "mgqmc/trial_backend.hpp"

namespace mgqmc {

enum class AfqmcMode { Phaseless, FreeProjection };

inline std::string afqmc_mode_name(AfqmcMode m) {
    return m == AfqmcMode::Phaseless ? "phaseless" : "free-projection";
}

struct Walker {
    MatrixXcd v;
    double weight = 1.0;
    /// Accumulated phase; identically 0 in phaseless mode.
    double phase = 0.0;
    cdouble overlap{0.0, 0.0};
    bool frozen = false;
};

struct PropagatorContext {
    double dtau = 0.005;
    /// Energy shift, fixed at the trial energy.
    double e0 = 0.0;
    CholeskyFactorization chol;
    double max_fb = 1.0;
    int reorth_period = 10;
    /// Freeze threshold relative to the initial overlap magnitude.
    double overlap_floor = 1e-8;
    AfqmcMode mode = AfqmcMode::Phaseless;

    void validate() const {
        if (!(dtau > 0.0)) throw ConfigError("dtau must be positive");
        if (reorth_period < 1) throw ConfigError("reorth_period must be at least 1");
        if (!(max_fb > 0.0)) throw ConfigError("max_fb must be positive");
    }
};

struct FieldSample {
    VectorXd x;
    VectorXcd xbar;
};

/// Force-bias shifts xbar_g = -sqrt(dtau) <T|v_g|phi>/<T|phi> for the
/// mean-field-shifted interaction operators v_g = i(L_g - t_g), capped in
/// modulus at max_fb.
inline VectorXcd force_bias(const RotatedIntegrals& ri, const OverlapTable& table,
                            const CholeskyFactorization& chol, int zeta, double dtau,
                            double max_fb) {
    VectorXcd xbar(chol.count());
    const double sq = std::sqrt(dtau);
    for (int g = 0; g < chol.count(); ++g) {
        const cdouble l_mixed = mixed_one_body(ri.lbar[static_cast<size_t>(g)], table, zeta);
        cdouble shift = -sq * cdouble(0.0, 1.0) * (l_mixed - chol.mf_shift[static_cast<size_t>(g)]);
        const double mag = std::abs(shift);
        if (mag > max_fb) shift *= max_fb / mag;
        xbar(g) = shift;
    }
    return xbar;
}

/// One-body propagator exp(A) with a single combined exponent
/// A = -dtau v0 + sqrt(dtau) sum_g (x_g - xbar_g) i (L_g - (t_g/zeta) I).
/// The scalar part of the mean-field shift enters through the number
/// operator, t_g = (t_g/zeta) N on the fixed-particle-number sector.
inline MatrixXcd propagator_matrix(const CholeskyFactorization& chol, int zeta, double dtau,
                                   const VectorXd& x, const VectorXcd& xbar) {
    MatrixXcd a = (-dtau) * chol.v0.cast<cdouble>();
    const double sq = std::sqrt(dtau);
    for (int g = 0; g < chol.count(); ++g) {
        const cdouble coef = cdouble(0.0, 1.0) * sq * (cdouble(x(g), 0.0) - xbar(g));
        a += coef * chol.vectors[static_cast<size_t>(g)].cast<cdouble>();
        a.diagonal().array() -= coef * (chol.mf_shift[static_cast<size_t>(g)] / zeta);
    }
    return a.exp();
}

inline void propagate_walker(Walker& w, const FieldSample& fields, const PropagatorContext& ctx) {
    const MatrixXcd b =
        propagator_matrix(ctx.chol, static_cast<int>(w.v.cols()), ctx.dtau, fields.x, fields.xbar);
    w.v = b * w.v;
    if (!w.v.allFinite()) throw NumericError("propagation diverged");
}

/// w <- w exp[-dtau (Re E_loc - E0)] max(0, cos dtheta); the cosine factor
/// projects out walkers whose overlap phase jumps by a quarter turn or more.
inline void update_weight_phaseless(Walker& w, cdouble e_loc, cdouble overlap_ratio,
                                    const PropagatorContext& ctx) {
    const double dtheta = std::arg(overlap_ratio);
    const double cos_factor = std::abs(dtheta) < kPi / 2.0 ? std::cos(dtheta) : 0.0;
    w.weight *= std::exp(-ctx.dtau * (e_loc.real() - ctx.e0)) * cos_factor;
}

/// Free-projection weight: the full complex importance factor, split into
/// magnitude and phase. The Gaussian reweighting term comes from sampling
/// x ~ N(0,1) while propagating with the shifted fields x - xbar.
inline void update_weight_free_projection(Walker& w, const FieldSample& fields,
                                          cdouble overlap_ratio, const PropagatorContext& ctx) {
    cdouble gauss = 0.0;
    for (int g = 0; g < fields.x.size(); ++g)
        gauss += fields.x(g) * fields.xbar(g) - 0.5 * fields.xbar(g) * fields.xbar(g);
    const cdouble factor = overlap_ratio * std::exp(gauss) *
                           std::exp(-ctx.dtau * (ctx.chol.h0_shifted - ctx.e0));
    w.weight *= std::abs(factor);
    w.phase += std::arg(factor);
}

struct AfqmcConfig {
    int n_walkers = 100;
    int n_steps = 100;
    std::uint64_t seed = 1;
    /// Fraction of initial steps excluded from the reported mean.
    double equilibration_fraction = 0.25;
    /// Initial walker occupation; 0 picks the lowest-zeta reference
    /// determinant. Needed when the trial is orthogonal to the reference.
    bitdet::Mask initial_determinant = 0;
};

struct EnergyTraceRow {
    int step = 0;
    double tau = 0.0;
    cdouble energy{0.0, 0.0};
    double total_weight = 0.0;
    int frozen_count = 0;
};

struct AfqmcResult {
    std::vector<EnergyTraceRow> trace;
    int equilibration_steps = 0;
    double mean_energy = 0.0;
    double mean_energy_all = 0.0;
};

/// Walker ensemble propagation with the mixed energy estimator
/// E = sum_l w_l e^{i theta_l} E_loc,l / sum_l w_l e^{i theta_l} recorded
/// before each step. Deterministic under a fixed seed for any worker
/// count: every (walker, step) pair draws from its own keyed stream, and
/// reductions run in fixed walker order.
inline AfqmcResult run_afqmc(const MolecularHamiltonian& ham, const PropagatorContext& ctx,
                             const TrialBackend& trial, const AfqmcConfig& cfg) {
    ctx.validate();
    if (cfg.n_walkers < 1 || cfg.n_steps < 1)
        throw ConfigError("need at least one walker and one step");
    const int n = ham.n;
    const int zeta = ham.n_electrons;
    if (ctx.chol.n != n) throw ConfigError("factorization dimension mismatch");

    bitdet::Mask init_mask = cfg.initial_determinant;
    if (init_mask == 0) init_mask = (bitdet::Mask{1} << zeta) - 1;
    if (std::popcount(init_mask) != zeta)
        throw ConfigError("initial determinant has the wrong particle number");
    MatrixXcd init_v = MatrixXcd::Zero(n, zeta);
    {
        int col = 0;
        for (int j = 0; j < n; ++j)
            if ((init_mask >> j) & 1u) init_v(j, col++) = 1.0;
    }
    const cdouble init_overlap = trial.overlap(init_v);
    if (std::abs(init_overlap) < 1e-12)
        throw ConfigError(
            "initial determinant is orthogonal to the trial state; set initial_determinant");
    const double floor_abs = ctx.overlap_floor * std::abs(init_overlap);

    std::vector<Walker> walkers(static_cast<size_t>(cfg.n_walkers));
    for (Walker& w : walkers) {
        w.v = init_v;
        w.overlap = init_overlap;
    }

    AfqmcResult result;
    result.trace.reserve(static_cast<size_t>(cfg.n_steps));
    std::vector<cdouble> e_loc(walkers.size());
    std::vector<double> weight_pre(walkers.size());
    std::vector<double> phase_pre(walkers.size());

    for (int step = 0; step < cfg.n_steps; ++step) {
        parallel_for(walkers.size(), [&](size_t l) {
            Walker& w = walkers[l];
            weight_pre[l] = w.frozen ? 0.0 : w.weight;
            phase_pre[l] = w.phase;
            e_loc[l] = 0.0;
            if (w.frozen) return;

            const ScaledDeterminant sd = factorize_columns(n, w.v);
            const MatrixXcd u = sd.det.unitary_completion();
            const OverlapTable table = trial.overlap_table(u, zeta);
            const cdouble o_pre = sd.scale * table.ref;
            if (std::abs(o_pre) < floor_abs) {
                w.frozen = true;
                w.weight = 0.0;
                weight_pre[l] = 0.0;
                return;
            }
            const RotatedIntegrals ri = rotate_integrals(u, ham.h, ctx.chol.vectors);
            e_loc[l] = local_energy(ham.h0, ri, table, zeta);

            FieldSample fields;
            fields.xbar = force_bias(ri, table, ctx.chol, zeta, ctx.dtau, ctx.max_fb);
            fields.x.resize(ctx.chol.count());
            RandomStream stream(cfg.seed, "fields", static_cast<std::uint64_t>(l),
                                static_cast<std::uint64_t>(step));
            for (int g = 0; g < ctx.chol.count(); ++g) fields.x(g) = stream.gaussian();

            propagate_walker(w, fields, ctx);
            cdouble o_post = trial.overlap(w.v);
            if (ctx.mode == AfqmcMode::Phaseless)
                update_weight_phaseless(w, e_loc[l], o_post / o_pre, ctx);
            else
                update_weight_free_projection(w, fields, o_post / o_pre, ctx);

            if ((step + 1) % ctx.reorth_period == 0) {
                const ScaledDeterminant re = factorize_columns(n, w.v);
                w.v = re.det.orbitals();
                o_post /= re.scale;
            }
            w.overlap = o_post;
        });

        EnergyTraceRow row;
        row.step = step;
        row.tau = step * ctx.dtau;
        cdouble num = 0.0, den = 0.0;
        double total_weight = 0.0;
        int frozen = 0;
        for (size_t l = 0; l < walkers.size(); ++l) {
            if (walkers[l].frozen) {
                ++frozen;
                continue;
            }
            const cdouble cw = weight_pre[l] * std::exp(cdouble(0.0, phase_pre[l]));
            num += cw * e_loc[l];
            den += cw;
            total_weight += weight_pre[l];
        }
        if (total_weight <= 0.0 || std::abs(den) == 0.0)
            throw NumericError("ensemble collapse: no walker weight left at step " +
                               std::to_string(step));
        row.energy = num / den;
        row.total_weight = total_weight;
        row.frozen_count = frozen;
        result.trace.push_back(row);
    }

    result.equilibration_steps =
        static_cast<int>(cfg.equilibration_fraction * static_cast<double>(cfg.n_steps));
    double sum_eq = 0.0, sum_all = 0.0;
    int count_eq = 0;
    for (const EnergyTraceRow& row : result.trace) {
        sum_all += row.energy.real();
        if (row.step >= result.equilibration_steps) {
            sum_eq += row.energy.real();
            ++count_eq;
        }
    }
    result.mean_energy_all = sum_all / static_cast<double>(result.trace.size());
    result.mean_energy = count_eq > 0 ? sum_eq / count_eq : result.mean_energy_all;
    return result;
}

}  // namespace mgqmc
