#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pra/group.hpp"

namespace pra {

// ---------------------------------------------------------------------------
// Elementary moves on k-tuples of group elements and their serialization.
//
// Move semantics (0-based positions internally, 1-based on the wire):
//   R, sign +1 : g_i <- g_i * g_j        R, sign -1 : g_i <- g_i * g_j^-1
//   L, sign +1 : g_i <- g_j * g_i        L, sign -1 : g_i <- g_j^-1 * g_i
//   P          : swap g_i and g_j        (stored with i < j)
//   I          : g_i <- g_i^-1           (j stored equal to i)
// ---------------------------------------------------------------------------

enum class MoveKind : uint8_t { R, L, P, I };

struct NielsenMove {
    MoveKind kind = MoveKind::R;
    uint8_t i = 0;
    uint8_t j = 0;
    int8_t sign = 0; // +1 / -1 for R and L, 0 for P and I

    bool operator==(const NielsenMove&) const = default;
};

using NielsenWord = std::vector<NielsenMove>;

// A tuple of element ids together with its packed key.  The key is the
// mixed-radix integer with ids[0] as the most significant digit, so
// integer key order is lexicographic tuple order and the keys of all
// tuples sharing a prefix form one contiguous range.  When |G|^k does not
// fit in 64 bits the key is set to no_key (walks never need keys; the
// census caps are far below this limit).
struct GenTuple {
    uint32_t k = 0;
    std::vector<uint32_t> ids;
    uint64_t key = 0;

    bool operator==(const GenTuple& o) const { return ids == o.ids; }
};

inline constexpr uint64_t no_key = ~0ull;

// True when order^k - 1 is representable in 64 bits.
bool key_fits(uint64_t order, uint32_t k);
uint64_t pack_key(uint64_t order, const std::vector<uint32_t>& ids);
std::vector<uint32_t> unpack_key(uint64_t order, uint32_t k, uint64_t key);

// Validates ids against the group and fills in the key.
GenTuple make_tuple(const GroupTable& G, std::vector<uint32_t> ids);

bool is_vertex(const GroupTable& G, const GenTuple& t);

// Throws std::invalid_argument on out-of-range positions, i == j for
// R/L/P, missing sign for R/L, or malformed P/I fields.
void validate_move(uint32_t k, const NielsenMove& m);

GenTuple apply_move(const GroupTable& G, const GenTuple& t, const NielsenMove& m);

// R+ <-> R-, L+ <-> L-; P and I are their own inverses.
NielsenMove inverse_move(NielsenMove m);

// The full move list for arity k in a fixed order: R+ then R- then L+
// then L- (each i-major, j-minor over all i != j), then P over i < j,
// then I over i.  Plain = the 4k(k-1) R/L moves; extended adds the
// k(k-1)/2 P moves and the k I moves.
std::vector<NielsenMove> move_set(uint32_t k, bool extended);

std::vector<std::pair<NielsenMove, GenTuple>> neighbors(const GroupTable& G,
                                                        const GenTuple& t,
                                                        bool extended);

GenTuple apply_word(const GroupTable& G, GenTuple t, const NielsenWord& w);

// Wire format, 1-based: "R+ i j", "R- i j", "L+ i j", "L- i j", "P i j",
// "I i".  A word is a whitespace-separated sequence of such moves, one per
// line when emitted; the parser also accepts ';' as a separator.
std::string move_to_string(const NielsenMove& m);
std::string word_to_string(const NielsenWord& w);
NielsenWord word_from_string(const std::string& s, uint32_t k);

// Tuple literals: element descriptors joined by top-level commas, where
// "top-level" means at nesting depth zero with respect to both kinds of
// brackets.  Examples: "(1,0),(0,1)" for ab groups, "(1 2),(1 2 3)" for
// permutation groups, "[[1,2],[3,4]],[[0,1],[4,0]]" for matrix groups.
GenTuple parse_tuple(const GroupTable& G, const std::string& s);
std::string tuple_string(const GroupTable& G, const GenTuple& t);

} // namespace pra
