#include "pra/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace pra {

namespace {

// Dense little-endian polynomials over Z/p, used only while setting up a
// field context (modulus search) and for reduction inside mul().
using Poly = std::vector<uint32_t>;

int poly_degree(const Poly& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

// Remainder of f modulo a monic m, both little-endian.
Poly poly_rem(Poly f, const Poly& m, uint64_t p) {
    int dm = poly_degree(m);
    for (int i = poly_degree(f); i >= dm; --i) {
        uint64_t c = f[i];
        if (c == 0) continue;
        for (int j = 0; j <= dm; ++j) {
            uint64_t t = (uint64_t)m[j] * c % p;
            uint64_t cur = f[i - dm + j];
            f[i - dm + j] = (uint32_t)((cur + p - t) % p);
        }
    }
    f.resize(dm, 0);
    return f;
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// A monic polynomial of degree e >= 2 is irreducible iff no monic
// polynomial of degree 1..e/2 divides it.  Trial division is plenty at
// the capped field sizes.
bool is_irreducible(const Poly& candidate, uint32_t e, uint64_t p) {
    for (uint32_t d = 1; 2 * d <= e; ++d) {
        Poly div(d + 1, 0);
        div[d] = 1;
        // odometer over the d lower coefficients of the divisor
        while (true) {
            if (poly_degree(poly_rem(candidate, div, p)) < 0) return false;
            uint32_t i = 0;
            while (i < d && div[i] == p - 1) div[i++] = 0;
            if (i == d) break;
            ++div[i];
        }
    }
    return true;
}

} // namespace

FieldCtx::FieldCtx(uint64_t p, uint32_t e) : p_(p), e_(e) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (e == 0) throw std::invalid_argument("field extension degree must be positive");
    q_ = 1;
    for (uint32_t i = 0; i < e; ++i) {
        q_ *= p;
        if (q_ > order_cap) throw cap_exceeded("field order exceeds 2^20 cap");
    }

    if (e == 1) {
        modulus_ = {0}; // modulus x: the prime field itself
    } else {
        // Lexicographically smallest monic irreducible: scan lower
        // coefficient vectors (c_0, ..., c_{e-1}) in ascending lex order,
        // i.e. with the last coefficient as the fastest-moving digit.
        Poly cand(e + 1, 0);
        cand[e] = 1;
        while (true) {
            if (is_irreducible(cand, e, p)) break;
            uint32_t i = e;
            while (i > 0 && cand[i - 1] == p - 1) cand[--i] = 0;
            if (i == 0) throw std::logic_error("no irreducible polynomial found");
            ++cand[i - 1];
        }
        modulus_.assign(cand.begin(), cand.begin() + e);
    }
    full_modulus_ = modulus_;
    full_modulus_.push_back(1);
}

void FieldCtx::check(const FieldElement& a) const {
    if (a.coeffs.size() != e_) throw std::invalid_argument("field element has wrong length");
    for (uint32_t c : a.coeffs)
        if (c >= p_) throw std::invalid_argument("field element coefficient out of range");
}

FieldElement FieldCtx::zero() const { return FieldElement{std::vector<uint32_t>(e_, 0)}; }

FieldElement FieldCtx::one() const {
    FieldElement r = zero();
    r.coeffs[0] = 1 % p_;
    return r;
}

bool FieldCtx::is_zero(const FieldElement& a) const {
    return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](uint32_t c) { return c == 0; });
}

FieldElement FieldCtx::from_int(uint64_t v) const {
    if (v >= q_) throw std::invalid_argument("element encoding out of range");
    FieldElement r = zero();
    for (uint32_t i = 0; i < e_; ++i) {
        r.coeffs[i] = (uint32_t)(v % p_);
        v /= p_;
    }
    return r;
}

uint64_t FieldCtx::to_int(const FieldElement& a) const {
    check(a);
    uint64_t v = 0;
    for (uint32_t i = e_; i > 0; --i) v = v * p_ + a.coeffs[i - 1];
    return v;
}

FieldElement FieldCtx::element(std::vector<uint32_t> coeffs) const {
    FieldElement r{std::move(coeffs)};
    check(r);
    return r;
}

FieldElement FieldCtx::add(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    FieldElement r = zero();
    for (uint32_t i = 0; i < e_; ++i) r.coeffs[i] = (uint32_t)(((uint64_t)a.coeffs[i] + b.coeffs[i]) % p_);
    return r;
}

FieldElement FieldCtx::sub(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    FieldElement r = zero();
    for (uint32_t i = 0; i < e_; ++i) r.coeffs[i] = (uint32_t)(((uint64_t)a.coeffs[i] + p_ - b.coeffs[i]) % p_);
    return r;
}

FieldElement FieldCtx::neg(const FieldElement& a) const { return sub(zero(), a); }

FieldElement FieldCtx::mul(const FieldElement& a, const FieldElement& b) const {
    check(a);
    check(b);
    Poly prod(2 * e_ - 1, 0);
    for (uint32_t i = 0; i < e_; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (uint32_t j = 0; j < e_; ++j)
            prod[i + j] = (uint32_t)((prod[i + j] + (uint64_t)a.coeffs[i] * b.coeffs[j]) % p_);
    }
    return FieldElement{poly_rem(std::move(prod), full_modulus_, p_)};
}

FieldElement FieldCtx::inv(const FieldElement& a) const {
    if (is_zero(a)) throw std::invalid_argument("division by zero in finite field");
    return pow(a, q_ - 2);
}

FieldElement FieldCtx::pow(const FieldElement& a, uint64_t n) const {
    check(a);
    FieldElement base = a;
    FieldElement r = one();
    while (n > 0) {
        if (n & 1) r = mul(r, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return r;
}

bool FieldCtx::less(const FieldElement& a, const FieldElement& b) const {
    return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(),
                                        b.coeffs.end());
}

} // namespace pra
