#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "pra/group.hpp"
#include "pra/linalg.hpp"

namespace pra {

// ---------------------------------------------------------------------------
// Abelian subgroup machinery.
// ---------------------------------------------------------------------------

// The subgroup generated by gens as a sorted list of mixed-radix element
// indices.  Capped at |K| <= 10^6.
std::vector<uint64_t> ab_closure(const AbelianGroup& K, const std::vector<AbVec>& gens);

uint64_t ab_element_order(const AbelianGroup& K, const AbVec& a);

// Exponents m_1..m_n with <m_1*a + b_1, ..., m_n*a + b_n> equal to
// <a, b_1, ..., b_n>.  Per prime p dividing the exponent of that subgroup
// the problem is linear algebra in the elementary abelian quotient L/pL
// (a dependent b picks up one copy of a, an independent list needs no
// shift), the per-prime residues are combined by the Chinese Remainder
// Theorem, and lifting the result back to L is valid because the product
// of the L/pL quotients is L modulo its Frattini subgroup.  The subgroup
// equality is re-verified by closure before returning; a verification
// failure is a bug and raises std::logic_error.  Throws
// std::invalid_argument when no exponent vector can work (the b-list is
// shorter than the rank of the subgroup demands).
std::vector<int64_t> gaschuetz_exponents(const AbelianGroup& K, const AbVec& a,
                                         const std::vector<AbVec>& bs);

// Frattini subgroup of K: multiply each invariant factor's generator by
// the product of the distinct primes dividing that factor.  Returned as
// the full sorted element list.
std::vector<AbVec> frattini(const AbelianGroup& K);

// ---------------------------------------------------------------------------
// Common eigenspaces and the greedy subset selections.
// ---------------------------------------------------------------------------

struct EigenSpace {
    std::vector<FieldElement> eigenvalues; // one per input matrix, over ext
    std::vector<Vec> basis;                // reduced row echelon basis over ext

    uint32_t dim() const { return (uint32_t)basis.size(); }
};

// Joint eigenspace decomposition over GF(q^m), m = lcm of the splitting
// degrees of the characteristic polynomials.  The base field passed in
// must outlive the decomposition (emb.src points at it).
struct EigenDecomposition {
    uint32_t n = 0;
    uint32_t m = 1;
    std::shared_ptr<const FieldCtx> ext;
    FieldHom emb{};
    std::vector<EigenSpace> spaces;
};

// The maximal subspaces on which every member of mats acts as a scalar.
// For an empty set this is the whole space by convention.  Throws
// cap_exceeded when GF(q^m) would overflow the field cap.
EigenDecomposition common_eigenspaces(const FieldCtx& F, uint32_t n, const std::vector<Mat>& mats);

// Potential w = sum of squared eigenspace dimensions; w of the empty set
// is n^2, and w = 0 exactly when there is no common eigenline.
uint64_t w_potential(const EigenDecomposition& d);
uint64_t w_potential(const FieldCtx& F, uint32_t n, const std::vector<Mat>& mats);

// Greedy subset S of T (as indices into T, in acceptance order) with
// w(S) = w(T).  Every accepted element strictly decreases w, so at most
// n^2 elements are accepted; ties go to the earliest element in input
// order, and the empty subset is returned when w(T) is already n^2.
// The selected subset has exactly the common eigenlines of all of T.
std::vector<uint32_t> greedy_line_subset(const FieldCtx& F, uint32_t n, const std::vector<Mat>& T);

// Block diagonal of the exterior powers of M from degree 1 through n,
// dimension 2^n - 1.  Entries of the degree-i block are the i x i minors
// of M, rows and columns indexed by size-i subsets in lexicographic
// order.  Multiplicative: block(AB) = block(A) block(B).
Mat exterior_block(const FieldCtx& F, const Mat& M);

// The subset whose invariant subspaces (of every dimension) are exactly
// those of T: runs the greedy line selection on the exterior-power block
// representation, where a d-dimensional invariant subspace becomes an
// invariant line.  Capped at n <= 4 (block dimension 2^n - 1).
std::vector<uint32_t> greedy_subspace_subset(const FieldCtx& F, uint32_t n,
                                             const std::vector<Mat>& T);

// First regular semisimple element of the coset x*D, scanning delta in
// ascending id order; D is deduplicated and sorted internally.  Returns
// nothing when the coset has no such element.
std::optional<uint32_t> find_rss_in_coset(const GroupTable& G, uint32_t x,
                                          std::vector<uint32_t> D);

} // namespace pra
