// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

// Command-line driver: shadow collection, calibration, overlap error studies,
// AFQMC runs, exact diagonalization references, and the brute-force projector
// check. Every run writes its resolved configuration next to its outputs and
// reproduces them bitwise when re-run with the same seeds.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgqmc/afqmc.hpp"
#include "mgqmc/bitdet.hpp"
#include "mgqmc/calibration.hpp"
#include "mgqmc/channel.hpp"
#include "mgqmc/cholesky.hpp"
#include "mgqmc/circuit.hpp"
#include "mgqmc/common.hpp"
#include "mgqmc/estimator.hpp"
#include "mgqmc/fci.hpp"
#include "mgqmc/hamiltonian.hpp"
#include "mgqmc/io.hpp"
#include "mgqmc/majorana_oracle.hpp"
#include "mgqmc/noise.hpp"
#include "mgqmc/rng.hpp"
#include "mgqmc/shadow_data.hpp"
#include "mgqmc/slater.hpp"
#include "mgqmc/statevector.hpp"
#include "mgqmc/trial.hpp"
#include "mgqmc/trial_backend.hpp"

namespace {

namespace fs = std::filesystem;
using namespace mgqmc;

constexpr const char* kConfigSchema = "mgqmc.config.v1";

// ---------------------------------------------------------------------------
// Shared helpers

MatrixXcd random_complex_matrix(int rows, int cols, RandomStream& rng) {
    MatrixXcd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = cdouble(rng.gaussian(), rng.gaussian());
    return m;
}

StateVector random_sector_state(int n, int zeta, RandomStream& rng) {
    StateVector phi(n);
    phi.amplitudes().setZero();
    for (const bitdet::Mask m : bitdet::enumerate_sector(n, zeta))
        phi.amplitudes()(static_cast<int64_t>(orbital_mask_to_basis_index(n, m))) =
            cdouble(rng.gaussian(), rng.gaussian());
    phi.normalize();
    return phi;
}

double trial_energy(const MolecularHamiltonian& ham, const StateVector& trial_sv) {
    const std::vector<bitdet::Mask> basis = bitdet::enumerate_sector(ham.n, ham.n_electrons);
    const MatrixXd m = sector_matrix(ham, ham.n_electrons);
    VectorXcd t(static_cast<int64_t>(basis.size()));
    for (size_t i = 0; i < basis.size(); ++i)
        t(static_cast<int64_t>(i)) =
            trial_sv.amplitude(orbital_mask_to_basis_index(ham.n, basis[i]));
    return (t.adjoint() * (m * t))(0).real();
}

/// Noise specs are semicolon-separated clauses: "none", "pauli:PX,PY,PZ",
/// "pauli1:PX,PY,PZ", "pauli2:PX,PY,PZ", "depolarizing:P", "readout:P",
/// "overrotation:EPS", "sp-noise".
PauliNoiseModel parse_noise_spec(const std::string& spec) {
    PauliNoiseModel noise;
    if (spec.empty() || spec == "none") return noise;
    std::stringstream ss(spec);
    std::string clause;
    while (std::getline(ss, clause, ';')) {
        if (clause.empty()) continue;
        const size_t colon = clause.find(':');
        const std::string key = clause.substr(0, colon);
        const std::string args = colon == std::string::npos ? "" : clause.substr(colon + 1);
        auto parse_triple = [&]() {
            std::array<double, 3> p{};
            std::stringstream as(args);
            std::string field;
            for (int i = 0; i < 3; ++i) {
                if (!std::getline(as, field, ','))
                    throw ConfigError("noise clause needs three rates: " + clause);
                p[static_cast<size_t>(i)] = std::stod(field);
            }
            return p;
        };
        try {
            if (key == "pauli") {
                noise.p1 = parse_triple();
                noise.p2 = noise.p1;
            } else if (key == "pauli1") {
                noise.p1 = parse_triple();
            } else if (key == "pauli2") {
                noise.p2 = parse_triple();
            } else if (key == "depolarizing") {
                noise.depolarizing_pre_measurement = std::stod(args);
            } else if (key == "readout") {
                noise.readout_flip = std::stod(args);
            } else if (key == "overrotation") {
                noise.coherent_overrotation = std::stod(args);
            } else if (key == "sp-noise") {
                noise.state_preparation_noise = true;
            } else {
                throw ConfigError("unknown noise clause: " + clause);
            }
        } catch (const std::invalid_argument&) {
            throw ConfigError("bad numeric value in noise clause: " + clause);
        } catch (const std::out_of_range&) {
            throw ConfigError("bad numeric value in noise clause: " + clause);
        }
    }
    noise.validate();
    return noise;
}

std::string noise_tag(const std::string& spec) { return spec.empty() ? "none" : spec; }

void write_resolved_config(const std::string& dir, json config) {
    config["schema"] = kConfigSchema;
    config["version"] = MGQMC_VERSION;
    save_json(config, dir + "/config.json");
}

std::string ensure_output_dir(const std::string& dir) {
    fs::create_directories(dir);
    return dir;
}

struct TrialOptions {
    std::string ansatz = "h2_de";
    double theta = 0.57;
    int zeta = 2;

    TrialSpec spec() const {
        TrialSpec s;
        s.ansatz = ansatz;
        s.n = 4;
        s.zeta = zeta;
        s.theta = theta;
        return s;
    }
};

void add_trial_options(CLI::App* cmd, TrialOptions& t) {
    cmd->add_option("--ansatz", t.ansatz, "Trial circuit family (h2_de or nv_de)")
        ->capture_default_str();
    cmd->add_option("--theta", t.theta, "Trial rotation angle in radians")
        ->capture_default_str();
    cmd->add_option("--zeta", t.zeta, "Particle number of the trial sector")
        ->capture_default_str();
}

json trial_config(const TrialOptions& t) {
    return {{"ansatz", t.ansatz}, {"theta", t.theta}, {"zeta", t.zeta}};
}

/// Hash of the auxiliary-field stream a run with these parameters consumes.
/// Fields are keyed only by (seed, walker, step), so equal hashes mean two
/// runs propagate with identical fields.
std::uint64_t field_stream_hash(std::uint64_t seed, int n_walkers, int n_steps, int n_fields) {
    std::uint64_t h = 1469598103934665603ULL;
    for (int step = 0; step < n_steps; ++step) {
        for (int l = 0; l < n_walkers; ++l) {
            RandomStream stream(seed, "fields", static_cast<std::uint64_t>(l),
                                static_cast<std::uint64_t>(step));
            for (int g = 0; g < n_fields; ++g) {
                const double x = stream.gaussian();
                std::uint64_t bits = 0;
                std::memcpy(&bits, &x, sizeof bits);
                h = (h ^ bits) * 1099511628211ULL;
            }
        }
    }
    return h;
}

// ---------------------------------------------------------------------------
// shadows-collect

struct ShadowsCollectOptions {
    TrialOptions trial;
    int n_circuits = 0;
    int shots = 256;
    std::uint64_t seed = 1;
    std::string noise_spec;
    std::string output_dir;
};

void run_shadows_collect(const ShadowsCollectOptions& o) {
    const Circuit trial = build_trial_circuit(o.trial.spec());
    const Circuit prep = build_preparation_circuit(trial, o.trial.zeta);
    const PauliNoiseModel noise = parse_noise_spec(o.noise_spec);
    const ShadowDataset data = collect_shadow_dataset(prep, o.n_circuits, o.shots, noise,
                                                      o.seed, noise_tag(o.noise_spec));
    const std::string dir = ensure_output_dir(o.output_dir);
    save_shadow_dataset(data, dir + "/shadows.jsonl");
    write_resolved_config(dir, {{"command", "shadows-collect"},
                                {"trial", trial_config(o.trial)},
                                {"n_circuits", o.n_circuits},
                                {"shots_per_circuit", o.shots},
                                {"seed", o.seed},
                                {"noise", noise_tag(o.noise_spec)},
                                {"trial_hash", data.trial_hash},
                                {"dataset", "shadows.jsonl"}});
    std::printf("wrote %zu circuits x %d shots to %s/shadows.jsonl (trial hash %llu)\n",
                data.samples.size(), data.shots_per_circuit, dir.c_str(),
                static_cast<unsigned long long>(data.trial_hash));
}

// ---------------------------------------------------------------------------
// overlap-study

struct OverlapStudyOptions {
    TrialOptions trial;
    std::string shadows_path;
    std::string calibration_path;
    std::string form = "factored";
    int n_walkers = 16;
    int walker_zeta = -1;
    std::uint64_t walker_seed = 7;
    std::string prefixes_spec;
    std::string output_dir;
};

std::vector<size_t> resolve_prefixes(const std::string& spec, size_t total) {
    std::vector<size_t> out;
    if (spec.empty()) {
        const double lo = std::min<double>(40.0, static_cast<double>(total));
        const int points = 7;
        for (int i = 0; i < points; ++i) {
            const double f = static_cast<double>(i) / (points - 1);
            const auto v = static_cast<size_t>(
                std::lround(lo * std::pow(static_cast<double>(total) / lo, f)));
            if (out.empty() || v > out.back()) out.push_back(std::max<size_t>(1, v));
        }
        if (out.back() != total) out.push_back(total);
        return out;
    }
    std::stringstream ss(spec);
    std::string field;
    while (std::getline(ss, field, ',')) {
        size_t v = 0;
        try {
            v = std::stoull(field);
        } catch (const std::exception&) {
            throw ConfigError("bad prefix value: " + field);
        }
        if (v < 1 || v > total)
            throw ConfigError("prefix " + field + " outside dataset of " +
                              std::to_string(total) + " circuits");
        if (!out.empty() && v <= out.back()) throw ConfigError("prefixes must be increasing");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty prefix list");
    return out;
}

EstimatorForm parse_form(const std::string& form) {
    if (form == "factored") return EstimatorForm::Factored;
    if (form == "per-sector") return EstimatorForm::PerSector;
    throw ConfigError("unknown estimator form: " + form);
}

void run_overlap_study(const OverlapStudyOptions& o) {
    if (o.n_walkers < 2) throw ConfigError("need at least two walkers for a ratio study");
    const int walker_zeta = o.walker_zeta < 0 ? o.trial.zeta : o.walker_zeta;
    if (walker_zeta != o.trial.zeta)
        throw ConfigError("walkers occupy particle sector " + std::to_string(walker_zeta) +
                          " but the trial lives in sector " + std::to_string(o.trial.zeta));

    const ShadowDataset data = load_shadow_dataset(o.shadows_path);
    const Circuit trial = build_trial_circuit(o.trial.spec());
    const Circuit prep = build_preparation_circuit(trial, o.trial.zeta);
    if (data.n != prep.num_qubits())
        throw ConfigError("dataset register size does not match the trial circuit");
    if (data.trial_hash != circuit_hash(prep))
        throw ConfigError("shadow dataset was collected for a different trial preparation");
    const StateVector trial_sv = trial_state(trial, o.trial.zeta);

    ChannelSpectrum spectrum = ChannelSpectrum::ideal(data.n);
    if (!o.calibration_path.empty()) {
        const CalibrationResult cal = load_calibration(o.calibration_path);
        if (cal.n != data.n) throw ConfigError("calibration register size does not match");
        spectrum = cal.spectrum();
    }
    const ShadowOverlapEstimator est(data, spectrum, o.trial.zeta, parse_form(o.form));

    RandomStream rng(o.walker_seed, "walkers");
    std::vector<SlaterDeterminant> walkers;
    std::vector<cdouble> exact;
    int attempts = 0;
    while (static_cast<int>(walkers.size()) < o.n_walkers) {
        if (++attempts > 100 * o.n_walkers)
            throw NumericError("could not draw walkers with nonvanishing trial overlap");
        const SlaterDeterminant cand(data.n, random_complex_matrix(data.n, walker_zeta, rng));
        const cdouble a = overlap_with_state(trial_sv, cand);
        if (std::abs(a) < 0.05) continue;
        walkers.push_back(cand);
        exact.push_back(a);
    }

    std::vector<std::vector<cdouble>> per_circuit;
    per_circuit.reserve(walkers.size());
    for (const SlaterDeterminant& w : walkers) per_circuit.push_back(est.per_circuit_values(w));

    const std::vector<size_t> prefixes = resolve_prefixes(o.prefixes_spec, data.samples.size());
    const std::string dir = ensure_output_dir(o.output_dir);
    std::ofstream csv = open_for_write(dir + "/mae.csv");
    csv << "n_circuits,amplitude_mae,ratio_mae\n";
    int n_ratios = 0;
    for (const size_t prefix : prefixes) {
        std::vector<cdouble> estimates;
        estimates.reserve(walkers.size());
        for (const std::vector<cdouble>& values : per_circuit) {
            const std::vector<cdouble> sub(values.begin(),
                                           values.begin() + static_cast<std::ptrdiff_t>(prefix));
            estimates.push_back(aggregate_mean(sub).value);
        }
        double amp_mae = 0.0;
        double ratio_mae = 0.0;
        n_ratios = 0;
        for (size_t j = 0; j < walkers.size(); ++j) {
            amp_mae += std::abs(estimates[j] - exact[j]);
            for (size_t k = j + 1; k < walkers.size(); ++k) {
                ratio_mae += std::abs(estimates[j] / estimates[k] - exact[j] / exact[k]);
                ++n_ratios;
            }
        }
        amp_mae /= static_cast<double>(walkers.size());
        ratio_mae /= static_cast<double>(n_ratios);
        csv << prefix << "," << format_double(amp_mae) << "," << format_double(ratio_mae)
            << "\n";
    }
    if (!csv) throw ConfigError("write failed: " + dir + "/mae.csv");
    csv.close();

    write_resolved_config(dir, {{"command", "overlap-study"},
                                {"trial", trial_config(o.trial)},
                                {"shadows", o.shadows_path},
                                {"calibration", o.calibration_path},
                                {"form", o.form},
                                {"n_walkers", o.n_walkers},
                                {"walker_zeta", walker_zeta},
                                {"walker_seed", o.walker_seed},
                                {"prefixes", prefixes},
                                {"table", "mae.csv"}});
    std::printf("evaluated %d walkers (%d ratios) at %zu circuit-count prefixes -> %s/mae.csv\n",
                o.n_walkers, n_ratios, prefixes.size(), dir.c_str());
}

// ---------------------------------------------------------------------------
// calibrate

struct CalibrateOptions {
    TrialOptions trial;
    int n = 4;
    std::string variant = "bare-zero";
    int n_circuits = 4000;
    int shots = 256;
    std::uint64_t seed = 1;
    std::string noise_spec;
    std::string output_dir;
};

void run_calibrate(const CalibrateOptions& o) {
    const CalibrationVariant variant = o.variant == "bare-zero"
                                           ? CalibrationVariant::BareZero
                                           : CalibrationVariant::SpCompensated;
    Circuit trial_prep(o.n);
    if (variant == CalibrationVariant::SpCompensated) {
        const Circuit trial = build_trial_circuit(o.trial.spec());
        trial_prep = build_preparation_circuit(trial, o.trial.zeta);
        if (trial_prep.num_qubits() != o.n)
            throw ConfigError("trial circuit register size does not match --n");
    }
    const PauliNoiseModel noise = parse_noise_spec(o.noise_spec);
    const CalibrationResult cal =
        run_calibration(o.n, variant, trial_prep, o.n_circuits, o.shots, noise, o.seed);

    const std::string dir = ensure_output_dir(o.output_dir);
    const std::string path = dir + "/calibration.json";
    save_calibration(cal, path);
    const CalibrationResult reloaded = load_calibration(path);
    const bool identical = reloaded.n == cal.n && reloaded.variant == cal.variant &&
                           reloaded.n_circuits == cal.n_circuits &&
                           reloaded.shots_per_circuit == cal.shots_per_circuit &&
                           reloaded.seed == cal.seed && reloaded.f_tilde == cal.f_tilde &&
                           reloaded.std_error == cal.std_error;
    if (!identical) throw NumericError("calibration file failed the bit-exact round-trip");

    write_resolved_config(dir, {{"command", "calibrate"},
                                {"n", o.n},
                                {"variant", o.variant},
                                {"trial", trial_config(o.trial)},
                                {"n_circuits", o.n_circuits},
                                {"shots_per_circuit", o.shots},
                                {"seed", o.seed},
                                {"noise", noise_tag(o.noise_spec)},
                                {"calibration", "calibration.json"}});
    std::printf("calibrated %d eigenvalues from %d circuits (%s), round-trip bit-exact\n",
                o.n + 1, o.n_circuits, o.variant.c_str());
    for (int l = 0; l <= o.n; ++l)
        std::printf("  degree %d: f_tilde = %.6f +- %.6f (ideal %.6f)\n", 2 * l,
                    cal.f_tilde[static_cast<size_t>(l)], cal.std_error[static_cast<size_t>(l)],
                    channel_eigenvalue(o.n, l));
}

// ---------------------------------------------------------------------------
// afqmc-run

struct AfqmcRunOptions {
    TrialOptions trial;
    std::string fcidump_path;
    std::string backend = "exact";
    std::string shadows_path;
    std::string calibration_path;
    std::string form = "factored";
    std::string mode = "phaseless";
    double dtau = 0.005;
    int n_steps = 1000;
    int n_walkers = 100;
    std::uint64_t seed = 1;
    double equilibration = 0.25;
    std::uint64_t initial_determinant = 0;
    double e0 = std::numeric_limits<double>::quiet_NaN();
    std::string paired_noise_spec;
    int paired_circuits = 16000;
    int paired_shots = 128;
    std::uint64_t paired_seed = 11;
    std::string output_dir;
};

std::unique_ptr<TrialBackend> make_shadow_backend(const AfqmcRunOptions& o, const Circuit& prep,
                                                  int zeta) {
    auto data = std::make_shared<const ShadowDataset>(load_shadow_dataset(o.shadows_path));
    if (data->n != prep.num_qubits())
        throw ConfigError("dataset register size does not match the trial circuit");
    if (data->trial_hash != circuit_hash(prep))
        throw ConfigError("shadow dataset was collected for a different trial preparation");
    ChannelSpectrum spectrum = ChannelSpectrum::ideal(data->n);
    if (!o.calibration_path.empty()) {
        const CalibrationResult cal = load_calibration(o.calibration_path);
        if (cal.n != data->n) throw ConfigError("calibration register size does not match");
        spectrum = cal.spectrum();
    }
    const int n = data->n;
    ShadowBackend shadow(std::move(data), spectrum, zeta, parse_form(o.form));
    if (o.backend == "shadows") return std::make_unique<ShadowBackend>(std::move(shadow));
    return std::make_unique<TabulatedBackend>(TabulatedBackend::from_backend(shadow, n, zeta));
}

json summarize(const AfqmcResult& r, const AfqmcRunOptions& o, double e0,
               std::uint64_t fields_hash) {
    return {{"equilibration_steps", r.equilibration_steps},
            {"mean_energy", r.mean_energy},
            {"mean_energy_all", r.mean_energy_all},
            {"e0", e0},
            {"dtau", o.dtau},
            {"n_steps", o.n_steps},
            {"n_walkers", o.n_walkers},
            {"seed", o.seed},
            {"field_stream_hash", fields_hash}};
}

void run_afqmc_cmd(const AfqmcRunOptions& o) {
    const MolecularHamiltonian ham = load_fcidump(o.fcidump_path);
    if (ham.n_electrons != o.trial.zeta)
        throw ConfigError("trial sector " + std::to_string(o.trial.zeta) +
                          " does not match " + std::to_string(ham.n_electrons) + " electrons");
    const Circuit trial = build_trial_circuit(o.trial.spec());
    if (trial.num_qubits() != ham.n)
        throw ConfigError("trial circuit register size does not match the Hamiltonian");
    const StateVector trial_sv = trial_state(trial, o.trial.zeta);

    PropagatorContext ctx;
    ctx.dtau = o.dtau;
    ctx.chol = cholesky_decompose(ham, 1e-8);
    ctx.e0 = std::isnan(o.e0) ? trial_energy(ham, trial_sv) : o.e0;
    ctx.mode = o.mode == "phaseless" ? AfqmcMode::Phaseless : AfqmcMode::FreeProjection;

    AfqmcConfig cfg;
    cfg.n_walkers = o.n_walkers;
    cfg.n_steps = o.n_steps;
    cfg.seed = o.seed;
    cfg.equilibration_fraction = o.equilibration;
    cfg.initial_determinant = o.initial_determinant;

    const std::uint64_t fields_hash =
        field_stream_hash(o.seed, o.n_walkers, o.n_steps, ctx.chol.count());
    const std::string dir = ensure_output_dir(o.output_dir);
    json config = {{"command", "afqmc-run"},
                   {"fcidump", fs::path(o.fcidump_path).filename().string()},
                   {"trial", trial_config(o.trial)},
                   {"backend", o.backend},
                   {"form", o.form},
                   {"mode", o.mode},
                   {"dtau", o.dtau},
                   {"n_steps", o.n_steps},
                   {"n_walkers", o.n_walkers},
                   {"seed", o.seed},
                   {"equilibration_fraction", o.equilibration},
                   {"initial_determinant", o.initial_determinant},
                   {"e0", ctx.e0}};

    if (o.paired_noise_spec.empty()) {
        std::unique_ptr<TrialBackend> backend;
        if (o.backend == "exact") {
            backend = std::make_unique<ExactBackend>(trial_sv);
        } else if (o.backend == "shadows" || o.backend == "tabulated") {
            if (o.shadows_path.empty())
                throw ConfigError("backend '" + o.backend + "' needs --shadows");
            backend = make_shadow_backend(o, build_preparation_circuit(trial, o.trial.zeta),
                                          o.trial.zeta);
        } else {
            throw ConfigError("unknown backend: " + o.backend);
        }
        const AfqmcResult result = run_afqmc(ham, ctx, *backend, cfg);
        save_energy_trace_csv(result.trace, dir + "/trace.csv");
        json summary = summarize(result, o, ctx.e0, fields_hash);
        summary["schema"] = kAfqmcSchema;
        summary["mode"] = o.mode;
        summary["backend"] = o.backend;
        save_json(summary, dir + "/summary.json");
        config["shadows"] = o.shadows_path;
        config["calibration"] = o.calibration_path;
        write_resolved_config(dir, config);
        std::printf("mean energy %.9f Ha over the final %d steps (all-step mean %.9f Ha)\n",
                    result.mean_energy, o.n_steps - result.equilibration_steps,
                    result.mean_energy_all);
        return;
    }

    // Paired mode: one noiseless and one noisy shadow dataset for the same
    // trial, propagated with identical auxiliary-field streams.
    if (o.backend == "exact")
        throw ConfigError("paired runs compare shadow-backed trials; pick a shadow backend");
    const Circuit prep = build_preparation_circuit(trial, o.trial.zeta);
    const PauliNoiseModel noise = parse_noise_spec(o.paired_noise_spec);
    const auto clean = std::make_shared<const ShadowDataset>(collect_shadow_dataset(
        prep, o.paired_circuits, o.paired_shots, PauliNoiseModel{}, o.paired_seed, "none"));
    const auto noisy = std::make_shared<const ShadowDataset>(
        collect_shadow_dataset(prep, o.paired_circuits, o.paired_shots, noise, o.paired_seed,
                               noise_tag(o.paired_noise_spec)));
    const ChannelSpectrum spectrum = ChannelSpectrum::ideal(ham.n);
    const EstimatorForm form = parse_form(o.form);

    auto build = [&](std::shared_ptr<const ShadowDataset> data) -> std::unique_ptr<TrialBackend> {
        ShadowBackend shadow(std::move(data), spectrum, o.trial.zeta, form);
        if (o.backend == "shadows") return std::make_unique<ShadowBackend>(std::move(shadow));
        return std::make_unique<TabulatedBackend>(
            TabulatedBackend::from_backend(shadow, ham.n, o.trial.zeta));
    };
    const std::unique_ptr<TrialBackend> backend_clean = build(clean);
    const std::unique_ptr<TrialBackend> backend_noisy = build(noisy);

    const AfqmcResult run_clean = run_afqmc(ham, ctx, *backend_clean, cfg);
    const AfqmcResult run_noisy = run_afqmc(ham, ctx, *backend_noisy, cfg);
    const std::uint64_t hash_clean =
        field_stream_hash(cfg.seed, cfg.n_walkers, cfg.n_steps, ctx.chol.count());
    const std::uint64_t hash_noisy =
        field_stream_hash(cfg.seed, cfg.n_walkers, cfg.n_steps, ctx.chol.count());
    if (hash_clean != hash_noisy)
        throw NumericError("paired runs consumed different auxiliary-field streams");

    save_energy_trace_csv(run_clean.trace, dir + "/trace_noiseless.csv");
    save_energy_trace_csv(run_noisy.trace, dir + "/trace_noisy.csv");
    json summary = {{"schema", kAfqmcSchema},
                    {"backend", o.backend},
                    {"mode", o.mode},
                    {"noiseless", summarize(run_clean, o, ctx.e0, hash_clean)},
                    {"noisy", summarize(run_noisy, o, ctx.e0, hash_noisy)},
                    {"noise", noise_tag(o.paired_noise_spec)},
                    {"mean_difference", run_clean.mean_energy - run_noisy.mean_energy},
                    {"field_streams_identical", hash_clean == hash_noisy}};
    save_json(summary, dir + "/summary.json");
    config["paired_noise"] = noise_tag(o.paired_noise_spec);
    config["paired_circuits"] = o.paired_circuits;
    config["paired_shots"] = o.paired_shots;
    config["paired_seed"] = o.paired_seed;
    write_resolved_config(dir, config);
    std::printf("noiseless mean %.9f Ha, noisy mean %.9f Ha, difference %.3f mHa, "
                "field streams identical (hash %llu)\n",
                run_clean.mean_energy, run_noisy.mean_energy,
                1e3 * (run_clean.mean_energy - run_noisy.mean_energy),
                static_cast<unsigned long long>(hash_clean));
}

// ---------------------------------------------------------------------------
// fci

struct FciOptions {
    std::string fcidump_path;
    std::string label;
    std::string output_path;
};

void run_fci_cmd(const FciOptions& o) {
    const MolecularHamiltonian ham = load_fcidump(o.fcidump_path);
    const FciSolution solution = exact_ground_state(ham);
    const std::string label =
        o.label.empty() ? fs::path(o.fcidump_path).stem().string() : o.label;
    const json out = {{"schema", kFciSchema},
                      {"geometry_label", label},
                      {"e_fci_hartree", solution.energy},
                      {"n_qubits", ham.n},
                      {"n_electrons", ham.n_electrons},
                      {"sector_dimension", solution.basis.size()},
                      {"residual", solution.residual},
                      {"version", MGQMC_VERSION}};
    std::printf("%s\n", out.dump(2).c_str());
    if (!o.output_path.empty()) save_json(out, o.output_path);
}

// ---------------------------------------------------------------------------
// verify-theorem1

struct VerifyOptions {
    int n = 4;
    int zeta = 2;
    int n_states = 20;
    std::uint64_t seed = 1;
};

void run_verify_cmd(const VerifyOptions& o) {
    if (o.n < 1 || o.n > 4)
        throw ConfigError("the brute-force projector check supports 1 <= n <= 4");
    if (o.zeta < 0 || o.zeta > o.n || o.zeta % 2 != 0)
        throw ConfigError("zeta must be even and within [0, n]");
    if (o.n_states < 1) throw ConfigError("need at least one random state");

    RandomStream rng(o.seed, "verify");
    const MatrixXcd p_zeta = particle_number_projector(o.n, {o.zeta});
    const MatrixXcd p_vac = particle_number_projector(o.n, {0});
    std::vector<double> oracle(static_cast<size_t>(o.n) + 1, 0.0);
    double max_err = 0.0;
    for (int rep = 0; rep < o.n_states; ++rep) {
        const StateVector phi = random_sector_state(o.n, o.zeta, rng);
        MatrixXcd transfer = MatrixXcd::Zero(phi.dim(), phi.dim());
        transfer.col(0) = phi.amplitudes();
        for (int l = 0; l <= o.n; ++l) {
            const MatrixXcd projected = p_zeta * brute_force_projector_action(phi, l) * p_vac;
            const cdouble scale =
                (transfer.conjugate().cwiseProduct(projected)).sum() /
                transfer.squaredNorm();
            oracle[static_cast<size_t>(l)] += scale.real() / o.n_states;
            const MatrixXcd expected = b_coefficient(o.n, o.zeta, l) * transfer;
            max_err = std::max(max_err, (projected - expected).cwiseAbs().maxCoeff());
        }
    }

    double sum = 0.0;
    std::printf("projector decomposition of |phi><0| at n=%d, zeta=%d over %d random states\n",
                o.n, o.zeta, o.n_states);
    for (int l = 0; l <= o.n; ++l) {
        const double formula = b_coefficient(o.n, o.zeta, l);
        sum += formula;
        std::printf("  degree %d: b formula = %.12f, oracle = %.12f\n", 2 * l, formula,
                    oracle[static_cast<size_t>(l)]);
    }
    std::printf("coefficient sum = %.15f (target 1 within 1e-12)\n", sum);
    std::printf("max entrywise error = %.3e (tolerance 1e-10)\n", max_err);
    if (max_err > 1e-10 || std::abs(sum - 1.0) > 1e-12)
        throw NumericError("projector decomposition check failed");
    std::printf("PASS\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matchgate-shadow overlap estimation and AFQMC driver"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(MGQMC_VERSION));

    ShadowsCollectOptions shadows_opts;
    CLI::App* shadows = app.add_subcommand(
        "shadows-collect", "Sample random measurement circuits and persist the outcomes");
    add_trial_options(shadows, shadows_opts.trial);
    shadows->add_option("--n-circuits", shadows_opts.n_circuits, "Number of sampled circuits")
        ->required();
    shadows->add_option("--shots", shadows_opts.shots, "Shots per circuit")
        ->capture_default_str();
    shadows->add_option("--seed", shadows_opts.seed, "Root seed")->capture_default_str();
    shadows->add_option("--noise", shadows_opts.noise_spec,
                        "Noise spec, e.g. pauli:0.01,0.03,0.02 or depolarizing:0.05");
    shadows->add_option("--output-dir", shadows_opts.output_dir, "Output directory")
        ->required();

    OverlapStudyOptions study_opts;
    CLI::App* study = app.add_subcommand(
        "overlap-study", "Tabulate amplitude and ratio errors against the exact trial");
    add_trial_options(study, study_opts.trial);
    study->add_option("--shadows", study_opts.shadows_path, "Shadow dataset file")->required();
    study->add_option("--calibration", study_opts.calibration_path,
                      "Calibrated eigenvalue file (raw spectrum when omitted)");
    study->add_option("--form", study_opts.form, "Estimator form: factored or per-sector")
        ->check(CLI::IsMember({"factored", "per-sector"}))
        ->capture_default_str();
    study->add_option("--walkers", study_opts.n_walkers, "Number of random walkers")
        ->capture_default_str();
    study->add_option("--walker-zeta", study_opts.walker_zeta,
                      "Particle number of the walkers (defaults to the trial sector)");
    study->add_option("--walker-seed", study_opts.walker_seed, "Walker draw seed")
        ->capture_default_str();
    study->add_option("--prefixes", study_opts.prefixes_spec,
                      "Comma-separated circuit-count prefixes (default: geometric ladder)");
    study->add_option("--output-dir", study_opts.output_dir, "Output directory")->required();

    CalibrateOptions cal_opts;
    CLI::App* calibrate = app.add_subcommand(
        "calibrate", "Estimate noisy channel eigenvalues from all-zero-state circuits");
    add_trial_options(calibrate, cal_opts.trial);
    calibrate->add_option("--n", cal_opts.n, "Number of qubits")->capture_default_str();
    calibrate
        ->add_option("--variant", cal_opts.variant,
                     "bare-zero or sp-compensated (includes the trial preparation noise)")
        ->check(CLI::IsMember({"bare-zero", "sp-compensated"}))
        ->capture_default_str();
    calibrate->add_option("--n-circuits", cal_opts.n_circuits, "Number of sampled circuits")
        ->capture_default_str();
    calibrate->add_option("--shots", cal_opts.shots, "Shots per circuit")->capture_default_str();
    calibrate->add_option("--seed", cal_opts.seed, "Root seed")->capture_default_str();
    calibrate->add_option("--noise", cal_opts.noise_spec, "Noise spec applied to the circuits");
    calibrate->add_option("--output-dir", cal_opts.output_dir, "Output directory")->required();

    AfqmcRunOptions afqmc_opts;
    CLI::App* afqmc = app.add_subcommand(
        "afqmc-run", "Propagate walkers against a trial backend and trace the energy");
    add_trial_options(afqmc, afqmc_opts.trial);
    afqmc->add_option("--fcidump", afqmc_opts.fcidump_path, "FCIDUMP Hamiltonian file")
        ->required();
    afqmc
        ->add_option("--backend", afqmc_opts.backend,
                     "Trial overlap backend: exact, shadows, or tabulated")
        ->check(CLI::IsMember({"exact", "shadows", "tabulated"}))
        ->capture_default_str();
    afqmc->add_option("--shadows", afqmc_opts.shadows_path,
                      "Shadow dataset file (shadow backends)");
    afqmc->add_option("--calibration", afqmc_opts.calibration_path,
                      "Calibrated eigenvalue file (shadow backends)");
    afqmc->add_option("--form", afqmc_opts.form, "Estimator form: factored or per-sector")
        ->check(CLI::IsMember({"factored", "per-sector"}))
        ->capture_default_str();
    afqmc->add_option("--mode", afqmc_opts.mode, "phaseless or free-projection")
        ->check(CLI::IsMember({"phaseless", "free-projection"}))
        ->capture_default_str();
    afqmc->add_option("--dtau", afqmc_opts.dtau, "Imaginary-time step")->capture_default_str();
    afqmc->add_option("--steps", afqmc_opts.n_steps, "Number of propagation steps")
        ->capture_default_str();
    afqmc->add_option("--walkers", afqmc_opts.n_walkers, "Number of walkers")
        ->capture_default_str();
    afqmc->add_option("--seed", afqmc_opts.seed, "Root seed for the field streams")
        ->capture_default_str();
    afqmc
        ->add_option("--equilibration", afqmc_opts.equilibration,
                     "Fraction of initial steps excluded from the reported mean")
        ->capture_default_str();
    afqmc->add_option("--initial-determinant", afqmc_opts.initial_determinant,
                      "Initial walker occupation mask (0 picks the reference determinant)");
    afqmc->add_option("--e0", afqmc_opts.e0,
                      "Propagator energy shift (defaults to the trial energy)");
    afqmc->add_option("--paired-noise", afqmc_opts.paired_noise_spec,
                      "Collect noiseless and noisy datasets internally and run both with "
                      "identical field streams");
    afqmc->add_option("--paired-circuits", afqmc_opts.paired_circuits,
                      "Circuits per dataset in paired mode")
        ->capture_default_str();
    afqmc->add_option("--paired-shots", afqmc_opts.paired_shots,
                      "Shots per circuit in paired mode")
        ->capture_default_str();
    afqmc->add_option("--paired-seed", afqmc_opts.paired_seed,
                      "Collection seed shared by both paired datasets")
        ->capture_default_str();
    afqmc->add_option("--output-dir", afqmc_opts.output_dir, "Output directory")->required();

    FciOptions fci_opts;
    CLI::App* fci = app.add_subcommand(
        "fci", "Exact ground-state energy of an FCIDUMP Hamiltonian in its electron sector");
    fci->add_option("--fcidump", fci_opts.fcidump_path, "FCIDUMP Hamiltonian file")->required();
    fci->add_option("--label", fci_opts.label, "Geometry label (defaults to the file stem)");
    fci->add_option("--output", fci_opts.output_path, "Optional JSON output path");

    VerifyOptions verify_opts;
    CLI::App* verify = app.add_subcommand(
        "verify-theorem1",
        "Check the sector-projected decomposition of |phi><0| against a brute-force oracle");
    verify->add_option("--n", verify_opts.n, "Number of qubits (at most 4)")
        ->capture_default_str();
    verify->add_option("--zeta", verify_opts.zeta, "Even particle number of the sector")
        ->capture_default_str();
    verify->add_option("--states", verify_opts.n_states, "Number of random states")
        ->capture_default_str();
    verify->add_option("--seed", verify_opts.seed, "Root seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*shadows) run_shadows_collect(shadows_opts);
        if (*study) run_overlap_study(study_opts);
        if (*calibrate) run_calibrate(cal_opts);
        if (*afqmc) run_afqmc_cmd(afqmc_opts);
        if (*fci) run_fci_cmd(fci_opts);
        if (*verify) run_verify_cmd(verify_opts);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const ResourceError& e) {
        std::fprintf(stderr, "resource error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
