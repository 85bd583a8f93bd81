#pragma once

#include <cstdint>
#include <vector>

#include "pra/field.hpp"

namespace pra {

// Dense exact linear algebra over a FieldCtx, sized for the small
// representations this toolkit handles (dimension <= ~15 after exterior
// power blocks).  Vectors are coordinate lists, matrices are square and
// row-major.

using Vec = std::vector<FieldElement>;

struct Mat {
    uint32_t n = 0;
    std::vector<FieldElement> a; // row-major, n*n entries

    FieldElement& at(uint32_t i, uint32_t j) { return a[(size_t)i * n + j]; }
    const FieldElement& at(uint32_t i, uint32_t j) const { return a[(size_t)i * n + j]; }

    bool operator==(const Mat&) const = default;
};

Mat mat_zero(const FieldCtx& F, uint32_t n);
Mat mat_identity(const FieldCtx& F, uint32_t n);
Mat mat_mul(const FieldCtx& F, const Mat& A, const Mat& B);
Vec mat_apply(const FieldCtx& F, const Mat& A, const Vec& v);
FieldElement mat_det(const FieldCtx& F, Mat A);
bool mat_invertible(const FieldCtx& F, const Mat& A);

// Characteristic polynomial det(xI - A) by the Berkowitz algorithm
// (division-free, so it works uniformly in any characteristic).
// Returned ascending: coefficient of x^i at index i, leading 1 at index n.
std::vector<FieldElement> charpoly(const FieldCtx& F, const Mat& A);

// Row-space routines.  A subspace is represented by a basis (list of
// vectors of common length); rref() returns the reduced row echelon basis
// with zero rows dropped, which doubles as a canonical form.
std::vector<Vec> rref(const FieldCtx& F, std::vector<Vec> rows);
uint32_t space_rank(const FieldCtx& F, const std::vector<Vec>& rows);
// Basis of the right kernel {v : R v = 0} of the (possibly non-square)
// row list R with ncols columns.
std::vector<Vec> nullspace(const FieldCtx& F, const std::vector<Vec>& rows, uint32_t ncols);
std::vector<Vec> intersect_spaces(const FieldCtx& F, const std::vector<Vec>& U,
                                  const std::vector<Vec>& W, uint32_t n);

// Polynomials over a field context: ascending coefficient vectors with no
// trailing zeros (the zero polynomial is the empty vector).
using FPoly = std::vector<FieldElement>;

int fpoly_deg(const FPoly& f);
FPoly fpoly_trim(const FieldCtx& F, FPoly f);
FPoly fpoly_mul(const FieldCtx& F, const FPoly& f, const FPoly& g);
// Quotient and remainder by a nonzero divisor.
std::pair<FPoly, FPoly> fpoly_divrem(const FieldCtx& F, FPoly f, const FPoly& g);
FPoly fpoly_monic(const FieldCtx& F, FPoly f);
FPoly fpoly_gcd(const FieldCtx& F, FPoly f, FPoly g);
FPoly fpoly_derivative(const FieldCtx& F, const FPoly& f);
FPoly fpoly_powmod(const FieldCtx& F, FPoly base, uint64_t exp, const FPoly& mod);
FieldElement fpoly_eval(const FieldCtx& F, const FPoly& f, const FieldElement& x);

// Product of the distinct irreducible factors of f (monic).  Correct in
// characteristic p, including inseparable inputs like (x-a)^p.
FPoly fpoly_radical(const FieldCtx& F, FPoly f);

// Smallest m such that every root of f lies in GF(q^m), i.e. the lcm of
// the degrees of f's irreducible factors.  Found by iterating the
// Frobenius x -> x^q modulo the radical of f; no extension field is built.
uint32_t splitting_degree(const FieldCtx& F, const FPoly& f);

// All distinct roots of f in F, sorted by F.less.  Isolates the product
// of the linear factors with gcd(f, x^q - x) and splits it recursively
// with seeded random gcds, so the result is deterministic.
std::vector<FieldElement> fpoly_roots(const FieldCtx& F, const FPoly& f);

// Subfield embedding GF(p^e) -> GF(p^(e*m)), determined by a root of the
// source modulus located by exhaustive scan of the target field.
struct FieldHom {
    const FieldCtx* src;
    const FieldCtx* dst;
    FieldElement x_image;
};

FieldHom find_embedding(const FieldCtx& src, const FieldCtx& dst);
FieldElement map_element(const FieldHom& h, const FieldElement& a);
Mat map_matrix(const FieldHom& h, const Mat& A);

} // namespace pra
