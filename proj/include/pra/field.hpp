#pragma once

#include <cstdint>
#include <vector>

#include "pra/common.hpp"

namespace pra {

// Exact arithmetic in GF(p^e).
//
// An element is its coefficient vector (c_0, ..., c_{e-1}) with respect to
// the power basis 1, x, ..., x^{e-1} of GF(p)[x] modulo a fixed monic
// irreducible polynomial of degree e.  Coefficients are always reduced into
// [0, p), so equality is plain coefficient-wise comparison and there is a
// canonical integer encoding sum c_i p^i in [0, p^e).
struct FieldElement {
    std::vector<uint32_t> coeffs;

    bool operator==(const FieldElement&) const = default;
};

// Field context: the modulus chosen for GF(p^e) plus all arithmetic.
//
// The modulus is deterministic: the lexicographically smallest monic
// irreducible of degree e, comparing lower-coefficient vectors
// (c_0, c_1, ..., c_{e-1}) left to right.  The same order (constant
// coefficient first) is used by less() on elements, so everything that
// says "lexicographic" in this toolkit means the same thing.
class FieldCtx {
  public:
    static constexpr uint64_t order_cap = 1u << 20;

    // Builds GF(p^e).  Throws std::invalid_argument if p is not prime or
    // e == 0, cap_exceeded if p^e > order_cap.
    FieldCtx(uint64_t p, uint32_t e);

    uint64_t p() const { return p_; }
    uint32_t e() const { return e_; }
    uint64_t q() const { return q_; } // p^e

    // Lower coefficients (c_0, ..., c_{e-1}) of the monic modulus
    // x^e + c_{e-1} x^{e-1} + ... + c_0.  For e == 1 this is {0}: the
    // modulus is x and the field is plain Z/p.
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    FieldElement zero() const;
    FieldElement one() const;
    bool is_zero(const FieldElement& a) const;

    // Integer encoding sum c_i p^i; from_int requires v < q.
    FieldElement from_int(uint64_t v) const;
    uint64_t to_int(const FieldElement& a) const;

    // Validates length e and coefficients in [0, p).
    FieldElement element(std::vector<uint32_t> coeffs) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    // Throws std::invalid_argument on zero input.
    FieldElement inv(const FieldElement& a) const;
    FieldElement pow(const FieldElement& a, uint64_t n) const;

    // Total order on elements: lexicographic on (c_0, ..., c_{e-1}).
    bool less(const FieldElement& a, const FieldElement& b) const;

  private:
    uint64_t p_;
    uint32_t e_;
    uint64_t q_;
    std::vector<uint32_t> modulus_;      // lower coefficients, length e
    std::vector<uint32_t> full_modulus_; // monic, length e+1

    void check(const FieldElement& a) const;
};

} // namespace pra
