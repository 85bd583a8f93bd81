#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pra/nielsen.hpp"

namespace pra {

// ---------------------------------------------------------------------------
// The tuple graphs: vertices are generating k-tuples, edges are moves.
// "Plain" uses R/L moves only; "extended" adds the P and I moves.
// Vertices are addressed by packed key throughout; the enumeration cap
// |G|^k <= 10^8 keeps flat per-key arrays affordable.
// ---------------------------------------------------------------------------

// Bitset over the full key space marking which tuples generate.
struct VkIndex {
    uint32_t k = 0;
    uint64_t order = 0;
    uint64_t key_count = 0;    // order^k
    uint64_t vertex_count = 0; // popcount
    std::vector<uint64_t> bits;

    bool test(uint64_t key) const { return (bits[key >> 6] >> (key & 63)) & 1; }
};

inline constexpr uint64_t enumeration_cap = 100000000; // keys

// Enumerates V_k(G) by a prefix tree walk: the subgroup generated by a
// tuple prefix is grown one coordinate at a time, subtrees under a prefix
// that already generates are filled wholesale, and subtrees whose prefix
// closure can no longer reach G are still descended (a later coordinate
// may rescue them) but leaves are tested with a Lagrange short-circuit.
VkIndex enumerate_vk(const GroupTable& G, uint32_t k);

// Streams V_k in ascending key order.
void for_each_generating_tuple(const GroupTable& G, uint32_t k,
                               const std::function<void(const GenTuple&)>& fn);

// Full component decomposition, kept in per-key form so that other layers
// (T-systems) can look up the component of any tuple in O(1).
struct ComponentCensus {
    bool extended = false;
    VkIndex index;
    std::vector<uint32_t> comp_of;  // per key; undefined off V_k
    std::vector<uint64_t> sizes;    // per component id
    std::vector<uint64_t> rep_keys; // minimal key per component id

    uint32_t count() const { return (uint32_t)sizes.size(); }
};

// Union-find over keys with path halving; component ids are assigned in
// ascending order of each component's minimal key.
ComponentCensus components_census(const GroupTable& G, uint32_t k, bool extended);

struct ComponentEntry {
    uint64_t size = 0;
    uint64_t rep_key = 0;
    std::vector<uint32_t> rep_ids; // lexicographically minimal member
};

struct ComponentReport {
    bool extended = false;
    uint32_t k = 0;
    uint64_t vertex_count = 0;
    uint64_t component_count = 0;
    std::vector<ComponentEntry> comps; // size descending, then rep key
};

ComponentReport components(const GroupTable& G, uint32_t k, bool extended);
ComponentReport census_report(const ComponentCensus& census);

// Shortest move word from t1 to t2 by bidirectional BFS, or nothing if
// the two tuples lie in different components.  The returned word is
// replayed before being returned.  Visited-set growth is bounded by
// path_search_cap nodes; beyond that cap_exceeded is thrown.
inline constexpr uint64_t path_search_cap = 20000000;

std::optional<NielsenWord> connect_path(const GroupTable& G, const GenTuple& t1,
                                        const GenTuple& t2, bool extended);

// BFS from t (extended moves) until some coordinate equals the identity;
// returns the word, or nothing if t's component contains no such tuple.
// max_depth bounds the search radius (default: unlimited).
std::optional<NielsenWord> to_redundant(const GroupTable& G, const GenTuple& t,
                                        uint32_t max_depth = ~0u);

// Expresses target as a product of the given generators and their
// inverses, as (generator index, sign) factors in multiplication order.
// Shortest such expression, by BFS over the Cayley graph.
std::vector<std::pair<uint32_t, int8_t>> factor_word(const GroupTable& G, uint32_t target,
                                                     const std::vector<uint32_t>& gens);

// Word sending t to (identity, ..., identity, gamma1, gamma2), where the
// pair (gamma1, gamma2) must generate G.  For k >= d(G)+2 the word is
// assembled constructively: reach a redundant tuple, park its identity
// coordinate last, repeat on the prefix, then rewrite the two freed slots
// to gamma1 and gamma2 by right-multiplication words and clear the rest.
// For smaller k it falls back to bidirectional BFS.  Nothing is returned
// when the target is not reachable from t.
std::optional<NielsenWord> connect_to_canonical(const GroupTable& G, const GenTuple& t,
                                                uint32_t gamma1, uint32_t gamma2);

} // namespace pra
