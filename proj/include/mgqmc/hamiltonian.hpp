// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "mgqmc/bitdet.hpp"
#include "mgqmc/common.hpp"

namespace mgqmc {

/// Second-quantized electronic Hamiltonian over spin orbitals,
///
///   H = h0 + sum_ps h(p,s) a_p^dag a_s
///          + (1/2) sum_pqrs v(p,q,r,s) a_p^dag a_q^dag a_s a_r,
///
/// with v in physicist ordering <pq|rs>. Spatial orbital k maps to spin
/// orbitals 2k (up) and 2k+1 (down).
struct MolecularHamiltonian {
    int n_spatial = 0;
    int n = 0;
    int n_electrons = 0;
    int ms2 = 0;
    double h0 = 0.0;
    MatrixXd h;
    bitdet::Tensor4<double> v;

    void validate() const {
        if (n != 2 * n_spatial) throw ConfigError("n must equal 2 * n_spatial");
        if (n_electrons <= 0 || n_electrons > n)
            throw ConfigError("electron count must satisfy 0 < zeta <= n");
        if (n_electrons % 2 != 0)
            throw ConfigError("unsupported system: odd electron counts are not handled");
        if (h.rows() != n || h.cols() != n) throw ConfigError("one-body matrix must be n x n");
        if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw ConfigError("one-body matrix must be symmetric");
        if (v.dim() != n) throw ConfigError("two-body tensor dimension mismatch");
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                for (int r = 0; r < n; ++r)
                    for (int s = 0; s < n; ++s) {
                        const double ref = v(p, q, r, s);
                        if (std::abs(v(q, p, s, r) - ref) > 1e-12 ||
                            std::abs(v(r, s, p, q) - ref) > 1e-12 ||
                            std::abs(v(r, q, p, s) - ref) > 1e-12)
                            throw ConfigError("two-body tensor breaks real-integral symmetry");
                    }
    }
};

namespace detail {

inline double parse_fortran_double(const std::string& token, int line_no) {
    std::string t = token;
    for (char& c : t)
        if (c == 'D' || c == 'd') c = 'E';
    size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line_no) + ": bad numeric value '" + token +
                          "'");
    }
    if (pos != t.size())
        throw ConfigError("line " + std::to_string(line_no) + ": bad numeric value '" + token +
                          "'");
    return value;
}

inline int parse_header_int(const std::string& header, const std::string& key, int line_no) {
    const size_t at = header.find(key + "=");
    if (at == std::string::npos)
        throw ConfigError("line " + std::to_string(line_no) + ": header is missing " + key);
    size_t i = at + key.size() + 1;
    size_t j = i;
    if (j < header.size() && (header[j] == '+' || header[j] == '-')) ++j;
    while (j < header.size() && std::isdigit(static_cast<unsigned char>(header[j]))) ++j;
    if (j == i)
        throw ConfigError("line " + std::to_string(line_no) + ": header value for " + key +
                          " is not an integer");
    return std::stoi(header.substr(i, j - i));
}

}  // namespace detail

/// Parses the FCIDUMP (Molpro) text convention: a namelist header carrying
/// NORB/NELEC/MS2, then records "value i j k l" with 1-based spatial orbital
/// indices and chemist (ij|kl) integrals. Records with all indices zero set
/// the core energy; k = l = 0 gives one-body integrals; j = k = l = 0 lists
/// orbital energies and is ignored. Spatial integrals are expanded to spin
/// orbitals and converted to physicist ordering here, so the rest of the
/// code sees a single convention.
inline MolecularHamiltonian parse_fcidump(std::istream& in) {
    std::string line;
    int line_no = 0;

    std::string header;
    bool header_done = false;
    bool saw_begin = false;
    while (std::getline(in, line)) {
        ++line_no;
        header += " " + line;
        if (line.find("&FCI") != std::string::npos) saw_begin = true;
        if (line.find("&END") != std::string::npos || line.find("/") != std::string::npos) {
            header_done = true;
            break;
        }
    }
    if (!saw_begin || !header_done)
        throw ConfigError("line " + std::to_string(line_no) + ": missing &FCI ... &END header");
    for (char& c : header) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));

    const int norb = detail::parse_header_int(header, "NORB", line_no);
    const int nelec = detail::parse_header_int(header, "NELEC", line_no);
    const int ms2 = header.find("MS2=") != std::string::npos
                        ? detail::parse_header_int(header, "MS2", line_no)
                        : 0;
    if (norb <= 0 || norb > 32) throw ConfigError("NORB out of the supported range [1, 32]");

    MatrixXd eri_one = MatrixXd::Zero(norb, norb);
    std::vector<double> eri(static_cast<size_t>(norb) * norb * norb * norb, 0.0);
    const auto chem = [norb](int i, int j, int k, int l) {
        return ((static_cast<size_t>(i) * norb + j) * norb + k) * norb + l;
    };
    double e_core = 0.0;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string value_token;
        if (!(fields >> value_token)) continue;
        int idx[4];
        for (int& x : idx)
            if (!(fields >> x))
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": expected 'value i j k l'");
        std::string extra;
        if (fields >> extra)
            throw ConfigError("line " + std::to_string(line_no) + ": trailing fields");
        const double value = detail::parse_fortran_double(value_token, line_no);
        for (int x : idx)
            if (x < 0 || x > norb)
                throw ConfigError("line " + std::to_string(line_no) + ": orbital index " +
                                  std::to_string(x) + " outside [0, NORB]");
        const int i = idx[0], j = idx[1], k = idx[2], l = idx[3];
        if (i == 0 && j == 0 && k == 0 && l == 0) {
            e_core = value;
        } else if (j == 0 && k == 0 && l == 0) {
            continue;
        } else if (k == 0 && l == 0) {
            if (i == 0) throw ConfigError("line " + std::to_string(line_no) + ": bad record");
            eri_one(i - 1, j - 1) = value;
            eri_one(j - 1, i - 1) = value;
        } else {
            if (i == 0 || j == 0 || k == 0 || l == 0)
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": partially zero index quadruple");
            const int a = i - 1, b = j - 1, c = k - 1, d = l - 1;
            for (auto [p, q, r, s] :
                 {std::array<int, 4>{a, b, c, d}, std::array<int, 4>{b, a, c, d},
                  std::array<int, 4>{a, b, d, c}, std::array<int, 4>{b, a, d, c},
                  std::array<int, 4>{c, d, a, b}, std::array<int, 4>{d, c, a, b},
                  std::array<int, 4>{c, d, b, a}, std::array<int, 4>{d, c, b, a}})
                eri[chem(p, q, r, s)] = value;
        }
    }
    if (nelec % 2 != 0)
        throw ConfigError("unsupported system: NELEC must be even, got " + std::to_string(nelec));

    MolecularHamiltonian out;
    out.n_spatial = norb;
    out.n = 2 * norb;
    out.n_electrons = nelec;
    out.ms2 = ms2;
    out.h0 = e_core;
    out.h = MatrixXd::Zero(out.n, out.n);
    out.v = bitdet::Tensor4<double>(out.n);
    for (int p = 0; p < out.n; ++p)
        for (int s = 0; s < out.n; ++s)
            if (p % 2 == s % 2) out.h(p, s) = eri_one(p / 2, s / 2);
    for (int p = 0; p < out.n; ++p)
        for (int q = 0; q < out.n; ++q)
            for (int r = 0; r < out.n; ++r)
                for (int s = 0; s < out.n; ++s) {
                    if (p % 2 != r % 2 || q % 2 != s % 2) continue;
                    out.v(p, q, r, s) = eri[chem(p / 2, r / 2, q / 2, s / 2)];
                }
    out.validate();
    return out;
}

inline MolecularHamiltonian parse_fcidump(const std::string& text) {
    std::istringstream in(text);
    return parse_fcidump(in);
}

inline MolecularHamiltonian load_fcidump(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open FCIDUMP file: " + path);
    return parse_fcidump(in);
}

}  // namespace mgqmc
