// Copyright 2026 The mgqmc Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "mgqmc/matchgate_compile.hpp"
#include "mgqmc/noise.hpp"

namespace mgqmc {

/// One randomized-measurement record: the drawn group element and the
/// histogram of measured bitstrings.
struct ShadowSample {
    SignedPermutation q;
    CountsMap counts;

    int total_shots() const {
        int total = 0;
        for (const auto& [bits, c] : counts) total += c;
        return total;
    }
};

/// A collected set of shadow records plus the provenance needed to replay
/// or validate it.
struct ShadowDataset {
    int n = 0;
    int shots_per_circuit = 0;
    uint64_t seed = 0;
    uint64_t trial_hash = 0;
    std::string noise_tag = "none";
    std::vector<ShadowSample> samples;

    size_t size() const { return samples.size(); }

    ShadowDataset prefix(size_t count) const {
        ShadowDataset out = *this;
        if (count < samples.size())
            out.samples.assign(samples.begin(), samples.begin() + static_cast<ptrdiff_t>(count));
        return out;
    }

    ShadowDataset slice(size_t begin, size_t end) const {
        ShadowDataset out = *this;
        end = std::min(end, samples.size());
        begin = std::min(begin, end);
        out.samples.assign(samples.begin() + static_cast<ptrdiff_t>(begin),
                           samples.begin() + static_cast<ptrdiff_t>(end));
        return out;
    }
};

inline uint64_t circuit_hash(const Circuit& c) {
    std::string dump;
    for (const auto& g : c.gates()) {
        dump += gate_name(g.kind);
        for (int k = 0; k < g.arity(); ++k) dump += ":" + std::to_string(g.q[k]);
        dump += "@" + std::to_string(g.angle) + ";";
    }
    return fnv1a64(dump);
}

/// Draws n_circuits group elements, runs each compiled circuit after the
/// given preparation, and records measured counts. Each circuit draws from
/// its own counter-based streams, so results do not depend on how the loop
/// is partitioned across workers.
inline ShadowDataset collect_shadow_dataset(const Circuit& prep, int n_circuits, int shots,
                                            const PauliNoiseModel& noise, uint64_t seed,
                                            const std::string& noise_tag = "none") {
    if (n_circuits < 1) throw ConfigError("empty dataset: need at least one circuit");
    const int n = prep.num_qubits();
    ShadowDataset data;
    data.n = n;
    data.shots_per_circuit = shots;
    data.seed = seed;
    data.trial_hash = circuit_hash(prep);
    data.noise_tag = noise_tag;
    data.samples.resize(static_cast<size_t>(n_circuits));
    parallel_for(static_cast<size_t>(n_circuits), [&](size_t i) {
        RandomStream group_stream(seed, "borel", i);
        RandomStream shot_stream(seed, "shots", i);
        ShadowSample& sample = data.samples[i];
        sample.q = SignedPermutation::random(n, group_stream);
        const Circuit shadow = compile_matchgate(sample.q).to_circuit();
        sample.counts = sample_counts(prep, shadow, shots, noise, shot_stream);
    });
    return data;
}

}  // namespace mgqmc
