#pragma once

#include <cstdint>
#include <vector>

#include "pra/nielsen.hpp"

namespace pra {

// ---------------------------------------------------------------------------
// Seeded random walk on the tuple graphs.  All randomness flows through
// SplitMix64 so identical seed and configuration reproduce identical
// trajectories bit for bit, across platforms.
// ---------------------------------------------------------------------------

struct SplitMix64 {
    uint64_t state = 0;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, n), unbiased by rejection.
    uint64_t below(uint64_t n);

    // Disjoint-for-practical-purposes substream: the substream seed is the
    // mixed value of (seed advanced by idx+1 golden-ratio increments).
    static SplitMix64 stream(uint64_t seed, uint64_t idx);
};

struct WalkConfig {
    uint32_t k = 2;
    uint64_t burn_in = 10000;
    uint64_t seed = 0;
    bool extended = false; // move policy: plain R/L or extended with P/I
    // Membership re-check cadence: 0 picks the default (every step in
    // debug builds, every 4096 steps in release); 1 checks every step.
    uint64_t check_every = 0;
};

struct WalkStats {
    uint64_t samples = 0;
    uint64_t steps = 0;
    std::vector<uint64_t> histogram; // per element id
    double tv = 0.0;         // total variation distance to uniform
    double chi_square = 0.0; // Pearson statistic against uniform
};

// Uniform random tuple resampled until it generates; throws
// search_exhausted after start_attempt_budget failures.
inline constexpr uint32_t start_attempt_budget = 10000;
GenTuple random_start_tuple(const GroupTable& G, uint32_t k, SplitMix64& rng);

// One move chosen uniformly from the policy's move set.
GenTuple pra_step(const GroupTable& G, const GenTuple& t,
                  const std::vector<NielsenMove>& moves, SplitMix64& rng);

// A full run: random start, burn_in steps, then one uniformly chosen
// coordinate of the final tuple.
uint32_t sample_element(const GroupTable& G, const WalkConfig& cfg, SplitMix64& rng);

// Exact histogram diagnostics: tv = (1/2) sum_g |p_hat(g) - 1/|G||, plus
// the chi-square statistic against the uniform expectation.
WalkStats uniformity_report(const std::vector<uint32_t>& samples, const GroupTable& G);

// The experiment driver: one chain from a random start, burn_in steps,
// then `samples` further steps, each contributing one uniformly chosen
// coordinate of the current tuple.  Membership in V_k is asserted at the
// configured cadence and once at the end.
WalkStats run_walk(const GroupTable& G, const WalkConfig& cfg, uint64_t samples,
                   std::vector<uint32_t>* raw_samples = nullptr,
                   GenTuple* start_out = nullptr, GenTuple* final_out = nullptr);

} // namespace pra
