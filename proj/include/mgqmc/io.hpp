// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgqmc/afqmc.hpp"
#include "mgqmc/calibration.hpp"
#include "mgqmc/shadow_data.hpp"

namespace mgqmc {

using nlohmann::json;

inline constexpr const char* kShadowSchema = "mgqmc.shadows.v1";
inline constexpr const char* kCalibrationSchema = "mgqmc.calibration.v1";
inline constexpr const char* kAfqmcSchema = "mgqmc.afqmc.v1";
inline constexpr const char* kFciSchema = "mgqmc.fci.v1";

inline std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    return out;
}

inline std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open for reading: " + path);
    return in;
}

inline void save_json(const json& j, const std::string& path) {
    std::ofstream out = open_for_write(path);
    out << j.dump(2) << "\n";
    if (!out) throw ConfigError("write failed: " + path);
}

inline json load_json(const std::string& path) {
    std::ifstream in = open_for_read(path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
}

/// One header object followed by one object per circuit, newline separated.
/// Measured bitstrings are stored as decimal-string keys of a counts map.
inline void save_shadow_dataset(const ShadowDataset& data, std::ostream& out) {
    json header = {{"schema", kShadowSchema},
                   {"n", data.n},
                   {"n_circuits", data.samples.size()},
                   {"shots_per_circuit", data.shots_per_circuit},
                   {"seed", data.seed},
                   {"trial_hash", data.trial_hash},
                   {"noise", data.noise_tag}};
    out << header.dump() << "\n";
    for (const ShadowSample& s : data.samples) {
        json counts = json::object();
        for (const auto& [bits, c] : s.counts) counts[std::to_string(bits)] = c;
        json line = {{"perm", s.q.perm}, {"signs", s.q.signs}, {"counts", counts}};
        out << line.dump() << "\n";
    }
}

inline void save_shadow_dataset(const ShadowDataset& data, const std::string& path) {
    std::ofstream out = open_for_write(path);
    save_shadow_dataset(data, out);
    if (!out) throw ConfigError("write failed: " + path);
}

inline ShadowDataset load_shadow_dataset(std::istream& in, const std::string& origin = "<stream>") {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty shadow file: " + origin);
    ShadowDataset data;
    size_t declared = 0;
    try {
        const json header = json::parse(line);
        if (header.at("schema").get<std::string>() != kShadowSchema)
            throw ConfigError("unexpected schema in " + origin);
        data.n = header.at("n").get<int>();
        declared = header.at("n_circuits").get<size_t>();
        data.shots_per_circuit = header.at("shots_per_circuit").get<int>();
        data.seed = header.at("seed").get<uint64_t>();
        data.trial_hash = header.at("trial_hash").get<uint64_t>();
        data.noise_tag = header.at("noise").get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError("invalid shadow header in " + origin + ": " + e.what());
    }
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const json rec = json::parse(line);
            ShadowSample s;
            s.q.n = data.n;
            s.q.perm = rec.at("perm").get<std::vector<int>>();
            s.q.signs = rec.at("signs").get<std::vector<int>>();
            s.q.validate();
            for (const auto& [key, value] : rec.at("counts").items())
                s.counts[std::stoull(key)] = value.get<int>();
            data.samples.push_back(std::move(s));
        } catch (const std::exception& e) {
            throw ConfigError("invalid shadow record at " + origin + " line " +
                              std::to_string(line_no) + ": " + e.what());
        }
    }
    if (data.samples.size() != declared)
        throw ConfigError("shadow file " + origin + " declares " + std::to_string(declared) +
                          " circuits but holds " + std::to_string(data.samples.size()));
    return data;
}

inline ShadowDataset load_shadow_dataset(const std::string& path) {
    std::ifstream in = open_for_read(path);
    return load_shadow_dataset(in, path);
}

inline json calibration_to_json(const CalibrationResult& r) {
    return {{"schema", kCalibrationSchema},
            {"n", r.n},
            {"variant", calibration_variant_name(r.variant)},
            {"n_circuits", r.n_circuits},
            {"shots_per_circuit", r.shots_per_circuit},
            {"seed", r.seed},
            {"f_tilde", r.f_tilde},
            {"std_error", r.std_error}};
}

inline CalibrationResult calibration_from_json(const json& j) {
    CalibrationResult r;
    try {
        if (j.at("schema").get<std::string>() != kCalibrationSchema)
            throw ConfigError("unexpected calibration schema");
        r.n = j.at("n").get<int>();
        const std::string variant = j.at("variant").get<std::string>();
        if (variant == "bare-zero")
            r.variant = CalibrationVariant::BareZero;
        else if (variant == "sp-compensated")
            r.variant = CalibrationVariant::SpCompensated;
        else
            throw ConfigError("unknown calibration variant: " + variant);
        r.n_circuits = j.at("n_circuits").get<int>();
        r.shots_per_circuit = j.at("shots_per_circuit").get<int>();
        r.seed = j.at("seed").get<uint64_t>();
        r.f_tilde = j.at("f_tilde").get<std::vector<double>>();
        r.std_error = j.at("std_error").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid calibration JSON: ") + e.what());
    }
    if (r.f_tilde.size() != static_cast<size_t>(r.n) + 1)
        throw ConfigError("calibration eigenvalue list has wrong length");
    return r;
}

inline void save_calibration(const CalibrationResult& r, const std::string& path) {
    save_json(calibration_to_json(r), path);
}

inline CalibrationResult load_calibration(const std::string& path) {
    return calibration_from_json(load_json(path));
}

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline void save_energy_trace_csv(const std::vector<EnergyTraceRow>& trace, std::ostream& out) {
    out << "step,tau,energy_re,energy_im,total_weight,frozen_count\n";
    for (const EnergyTraceRow& row : trace) {
        out << row.step << "," << format_double(row.tau) << ","
            << format_double(row.energy.real()) << "," << format_double(row.energy.imag()) << ","
            << format_double(row.total_weight) << "," << row.frozen_count << "\n";
    }
}

inline void save_energy_trace_csv(const std::vector<EnergyTraceRow>& trace,
                                  const std::string& path) {
    std::ofstream out = open_for_write(path);
    save_energy_trace_csv(trace, out);
    if (!out) throw ConfigError("write failed: " + path);
}

inline std::vector<EnergyTraceRow> load_energy_trace_csv(std::istream& in,
                                                         const std::string& origin = "<stream>") {
    std::vector<EnergyTraceRow> trace;
    std::string line;
    if (!std::getline(in, line) || line.rfind("step,", 0) != 0)
        throw ConfigError("missing CSV header in " + origin);
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(row, field, ',')) fields.push_back(field);
        if (fields.size() != 6)
            throw ConfigError("bad CSV row at " + origin + " line " + std::to_string(line_no));
        try {
            EnergyTraceRow r;
            r.step = std::stoi(fields[0]);
            r.tau = std::stod(fields[1]);
            r.energy = cdouble(std::stod(fields[2]), std::stod(fields[3]));
            r.total_weight = std::stod(fields[4]);
            r.frozen_count = std::stoi(fields[5]);
            trace.push_back(r);
        } catch (const std::exception&) {
            throw ConfigError("bad CSV value at " + origin + " line " + std::to_string(line_no));
        }
    }
    return trace;
}

inline std::vector<EnergyTraceRow> load_energy_trace_csv(const std::string& path) {
    std::ifstream in = open_for_read(path);
    return load_energy_trace_csv(in, path);
}

}  // namespace mgqmc
