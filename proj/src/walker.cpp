#include "pra/walker.hpp"

#include <cmath>
#include <stdexcept>

namespace pra {

uint64_t SplitMix64::below(uint64_t n) {
    if (n == 0) throw std::invalid_argument("empty draw range");
    uint64_t residue = (0 - n) % n; // 2^64 mod n
    while (true) {
        uint64_t r = next();
        if (r >= residue) return r % n;
    }
}

SplitMix64 SplitMix64::stream(uint64_t seed, uint64_t idx) {
    SplitMix64 primer(seed + idx * 0x9E3779B97F4A7C15ull);
    return SplitMix64(primer.next());
}

GenTuple random_start_tuple(const GroupTable& G, uint32_t k, SplitMix64& rng) {
    std::vector<uint32_t> ids(k);
    for (uint32_t attempt = 0; attempt < start_attempt_budget; ++attempt) {
        for (auto& id : ids) id = (uint32_t)rng.below(G.order());
        if (G.is_generating(ids)) return make_tuple(G, ids);
    }
    throw search_exhausted("no generating start tuple found within the attempt budget");
}

GenTuple pra_step(const GroupTable& G, const GenTuple& t,
                  const std::vector<NielsenMove>& moves, SplitMix64& rng) {
    return apply_move(G, t, moves[rng.below(moves.size())]);
}

uint32_t sample_element(const GroupTable& G, const WalkConfig& cfg, SplitMix64& rng) {
    if (cfg.k == 0) throw std::invalid_argument("tuple arity out of range");
    auto moves = move_set(cfg.k, cfg.extended);
    GenTuple t = random_start_tuple(G, cfg.k, rng);
    for (uint64_t s = 0; s < cfg.burn_in; ++s) t = pra_step(G, t, moves, rng);
    return t.ids[rng.below(cfg.k)];
}

WalkStats uniformity_report(const std::vector<uint32_t>& samples, const GroupTable& G) {
    if (samples.empty()) throw std::invalid_argument("no samples to report on");
    WalkStats st;
    st.samples = samples.size();
    st.histogram.assign(G.order(), 0);
    for (uint32_t id : samples) {
        if (id >= G.order()) throw std::invalid_argument("sample id out of range");
        ++st.histogram[id];
    }
    double n = (double)samples.size();
    double expected = n / (double)G.order();
    double tv = 0.0, chi = 0.0;
    for (uint64_t count : st.histogram) {
        tv += std::fabs((double)count / n - 1.0 / (double)G.order());
        double diff = (double)count - expected;
        chi += diff * diff / expected;
    }
    st.tv = 0.5 * tv;
    st.chi_square = chi;
    return st;
}

WalkStats run_walk(const GroupTable& G, const WalkConfig& cfg, uint64_t samples,
                   std::vector<uint32_t>* raw_samples, GenTuple* start_out, GenTuple* final_out) {
    if (cfg.k == 0) throw std::invalid_argument("tuple arity out of range");
    if (samples == 0) throw std::invalid_argument("need at least one sample");

    uint64_t cadence = cfg.check_every;
    if (cadence == 0) {
#ifdef NDEBUG
        cadence = 4096;
#else
        cadence = 1;
#endif
    }

    auto moves = move_set(cfg.k, cfg.extended);
    SplitMix64 rng = SplitMix64::stream(cfg.seed, 0);
    GenTuple t = random_start_tuple(G, cfg.k, rng);
    if (start_out) *start_out = t;

    std::vector<uint32_t> collected;
    collected.reserve(samples);
    uint64_t steps = 0;
    auto step_checked = [&]() {
        t = pra_step(G, t, moves, rng);
        ++steps;
        if (steps % cadence == 0 && !is_vertex(G, t))
            throw std::logic_error("walk left the generating-tuple set");
    };

    for (uint64_t s = 0; s < cfg.burn_in; ++s) step_checked();
    for (uint64_t s = 0; s < samples; ++s) {
        step_checked();
        collected.push_back(t.ids[rng.below(cfg.k)]);
    }
    if (!is_vertex(G, t)) throw std::logic_error("walk left the generating-tuple set");
    if (final_out) *final_out = t;

    WalkStats st = uniformity_report(collected, G);
    st.steps = steps;
    if (raw_samples) *raw_samples = std::move(collected);
    return st;
}

} // namespace pra
