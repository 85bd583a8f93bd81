#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pra/common.hpp"
#include "pra/field.hpp"

namespace pra {

// ---------------------------------------------------------------------------
// Finite abelian groups as explicit Z-modules.  Element = coordinate vector
// modulo the invariant factors; the factor list is always a divisibility
// chain d1 | d2 | ... | dr with every di >= 2 (trivial group: empty list).
// ---------------------------------------------------------------------------

using AbVec = std::vector<uint32_t>;

struct AbelianGroup {
    std::vector<uint32_t> factors;

    // Accepts any list of moduli >= 1 and normalizes it to invariant
    // factors via prime-power decomposition (so {2,3} becomes {6}).
    static AbelianGroup from_moduli(const std::vector<uint64_t>& moduli);

    uint64_t order() const;
    uint32_t rank() const { return (uint32_t)factors.size(); }
    uint64_t exponent() const { return factors.empty() ? 1 : factors.back(); }

    AbVec zero() const { return AbVec(factors.size(), 0); }
    AbVec add(const AbVec& a, const AbVec& b) const;
    AbVec neg(const AbVec& a) const;
    AbVec smul(uint64_t m, const AbVec& a) const;
    void check(const AbVec& a) const;

    // Mixed-radix bijection between vectors and [0, order); coordinate 0
    // is the least significant digit.
    uint64_t index_of(const AbVec& a) const;
    AbVec vector_of(uint64_t idx) const;
};

// ---------------------------------------------------------------------------
// 2x2 matrices over a field, the raw material of the matrix families.
// ---------------------------------------------------------------------------

struct Mat2 {
    FieldElement a, b, c, d;
    bool operator==(const Mat2&) const = default;
};

enum class GroupFamily { abelian, sym, alt, sl2, psl2, pgl2 };

// ---------------------------------------------------------------------------
// A finite group with dense element ids 0..order-1 and exact arithmetic.
//
// Ids are assigned by sorting canonical element forms, so they are stable
// across runs: abelian groups use the mixed-radix index, permutations sort
// lexicographically by image array, matrix elements sort by the tuple of
// entries under the field's coefficient-lexicographic order.  PSL elements
// are represented by the smaller of {M, -M} in that order; PGL elements are
// scaled so their first nonzero entry is 1.
//
// Multiplication tables are materialized up to order 10^4; above that,
// products are computed from the canonical forms on demand.
// ---------------------------------------------------------------------------

class GroupTable {
  public:
    static constexpr uint64_t order_cap = 1000000;
    static constexpr uint32_t mul_table_cap = 10000;
    static constexpr uint32_t aut_order_cap = 2000;
    static constexpr uint32_t class_order_cap = 10000;

    // Group spec grammar:
    //   psl2:<q> | sl2:<q> | pgl2:<q> | sym:<n> | alt:<n> | ab:<d1>,<d2>,...
    // q must be a prime power; the resulting order must stay within
    // order_cap.  Throws std::invalid_argument / cap_exceeded.
    static GroupTable build(const std::string& spec);

    const std::string& label() const { return label_; }
    GroupFamily family() const { return family_; }
    uint32_t order() const { return order_; }
    uint32_t identity() const { return identity_; }

    uint32_t mul(uint32_t x, uint32_t y) const;
    uint32_t inv(uint32_t x) const;
    uint32_t element_order(uint32_t x) const;

    std::string element_string(uint32_t id) const;
    uint32_t element_from_string(const std::string& s) const;

    // Subgroup generated by gens, as a sorted id list.  closure({}) = {e}.
    std::vector<uint32_t> closure(const std::vector<uint32_t>& gens) const;
    // Same reachability computation with a Lagrange short-circuit: a
    // closure exceeding |G|/2 can only be G itself.
    bool is_generating(const std::vector<uint32_t>& tuple) const;

    std::vector<uint32_t> centralizer(uint32_t g) const;

    // Regular semisimple test for the matrix families: tr(M)^2 != 4 det(M),
    // which is invariant under the scalar ambiguity of PSL and PGL.
    // Throws std::invalid_argument for non-matrix groups.
    bool is_regular_semisimple(uint32_t g) const;

    // Smallest size of a generating set.  Exhaustive (with conjugacy
    // pruning) through size 2 for small orders; for the nonabelian
    // families above that, a seeded random pair search plus a
    // noncommutativity witness certifies d = 2.
    uint32_t min_generators() const;

    // Lexicographically first generating tuple of minimal size (cached);
    // the deterministic anchor used by the automorphism search and by
    // anything needing a canonical generating pair.
    const std::vector<uint32_t>& min_generating_tuple() const;

    // All automorphisms as image tables, sorted.  Brute-force search over
    // images of a minimal generating tuple, pruned by element order and
    // conjugacy class size.  Capped at aut_order_cap.
    const std::vector<std::vector<uint32_t>>& automorphism_group() const;

    // Conjugacy data (lazy, capped at class_order_cap).
    const std::vector<uint32_t>& class_of() const;
    const std::vector<uint32_t>& class_sizes() const;

    // Family payload access; throws std::invalid_argument on mismatch.
    const AbelianGroup& abelian() const;
    const FieldCtx& field() const;
    Mat2 matrix(uint32_t id) const;
    std::optional<uint32_t> id_of_matrix(const Mat2& m) const;
    std::vector<uint8_t> perm(uint32_t id) const;
    uint32_t degree() const; // permutation degree

    GroupTable(GroupTable&&) = default;
    GroupTable& operator=(GroupTable&&) = default;
    GroupTable(const GroupTable&) = delete;
    GroupTable& operator=(const GroupTable&) = delete;

  private:
    GroupTable() = default;

    std::string label_;
    GroupFamily family_ = GroupFamily::abelian;
    uint32_t order_ = 0;
    uint32_t identity_ = 0;

    AbelianGroup ab_;

    std::optional<FieldCtx> field_;
    std::vector<Mat2> mats_;                    // canonical forms, id order
    std::vector<std::array<uint32_t, 4>> enc_;  // sort keys, parallel to mats_

    uint32_t deg_ = 0;
    std::vector<uint8_t> perms_; // flattened image arrays, id order

    std::vector<uint16_t> mul_table_;
    std::vector<uint32_t> inv_table_;

    mutable std::vector<uint32_t> orders_;
    mutable std::vector<uint32_t> class_of_;
    mutable std::vector<uint32_t> class_sizes_;
    mutable std::vector<std::vector<uint32_t>> auts_;
    mutable bool auts_ready_ = false;
    mutable std::optional<uint32_t> min_gens_;
    mutable std::optional<std::vector<uint32_t>> min_tuple_;

    uint32_t raw_mul(uint32_t x, uint32_t y) const;
    uint32_t raw_inv(uint32_t x) const;
    Mat2 canonical_matrix(Mat2 m) const;
    std::array<uint32_t, 4> encode_matrix(const Mat2& m) const;
    uint32_t lookup_matrix(const Mat2& m) const;
    uint32_t lookup_perm(const uint8_t* img) const;
    void finish_build();
    void ensure_classes() const;
    std::vector<uint32_t> find_min_generating_tuple() const;

    friend GroupTable build_abelian(const std::string& label, const std::vector<uint64_t>& moduli);
    friend GroupTable build_perm_group(const std::string& label, GroupFamily fam, uint32_t n);
    friend GroupTable build_matrix_group(const std::string& label, GroupFamily fam, uint64_t q);
};

// Parses "p^e = q" group-spec arguments; throws std::invalid_argument if q
// is not a prime power.
std::pair<uint64_t, uint32_t> factor_prime_power(uint64_t q);

// Theoretical order of a family member, used for cap checks before any
// enumeration happens (q odd halves PSL).
uint64_t sl2_order(uint64_t q);
uint64_t psl2_order(uint64_t q);
uint64_t pgl2_order(uint64_t q);

} // namespace pra
