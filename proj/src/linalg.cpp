#include "pra/linalg.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace pra {

Mat mat_zero(const FieldCtx& F, uint32_t n) {
    Mat M;
    M.n = n;
    M.a.assign((size_t)n * n, F.zero());
    return M;
}

Mat mat_identity(const FieldCtx& F, uint32_t n) {
    Mat M = mat_zero(F, n);
    for (uint32_t i = 0; i < n; ++i) M.at(i, i) = F.one();
    return M;
}

Mat mat_mul(const FieldCtx& F, const Mat& A, const Mat& B) {
    if (A.n != B.n) throw std::invalid_argument("matrix dimension mismatch");
    Mat C = mat_zero(F, A.n);
    for (uint32_t i = 0; i < A.n; ++i)
        for (uint32_t k = 0; k < A.n; ++k) {
            if (F.is_zero(A.at(i, k))) continue;
            for (uint32_t j = 0; j < A.n; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(A.at(i, k), B.at(k, j)));
        }
    return C;
}

Vec mat_apply(const FieldCtx& F, const Mat& A, const Vec& v) {
    if (v.size() != A.n) throw std::invalid_argument("matrix/vector dimension mismatch");
    Vec r(A.n, F.zero());
    for (uint32_t i = 0; i < A.n; ++i)
        for (uint32_t j = 0; j < A.n; ++j) r[i] = F.add(r[i], F.mul(A.at(i, j), v[j]));
    return r;
}

FieldElement mat_det(const FieldCtx& F, Mat A) {
    uint32_t n = A.n;
    FieldElement det = F.one();
    for (uint32_t col = 0; col < n; ++col) {
        uint32_t piv = col;
        while (piv < n && F.is_zero(A.at(piv, col))) ++piv;
        if (piv == n) return F.zero();
        if (piv != col) {
            for (uint32_t j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(col, j));
            det = F.neg(det);
        }
        det = F.mul(det, A.at(col, col));
        FieldElement pinv = F.inv(A.at(col, col));
        for (uint32_t i = col + 1; i < n; ++i) {
            if (F.is_zero(A.at(i, col))) continue;
            FieldElement factor = F.mul(A.at(i, col), pinv);
            for (uint32_t j = col; j < n; ++j)
                A.at(i, j) = F.sub(A.at(i, j), F.mul(factor, A.at(col, j)));
        }
    }
    return det;
}

bool mat_invertible(const FieldCtx& F, const Mat& A) { return !F.is_zero(mat_det(F, A)); }

std::vector<FieldElement> charpoly(const FieldCtx& F, const Mat& M) {
    uint32_t n = M.n;
    // Berkowitz: grow the characteristic polynomial one leading principal
    // submatrix at a time via a Toeplitz multiplication.  poly holds the
    // coefficients in descending order, starting from the empty matrix.
    std::vector<FieldElement> poly{F.one()};
    for (uint32_t i = 0; i < n; ++i) {
        std::vector<FieldElement> c(i + 2, F.zero());
        c[0] = F.one();
        c[1] = F.neg(M.at(i, i));
        if (i > 0) {
            Vec v(i), row(i);
            for (uint32_t t = 0; t < i; ++t) {
                v[t] = M.at(t, i);   // column above the new diagonal entry
                row[t] = M.at(i, t); // row left of it
            }
            for (uint32_t j = 2; j <= i + 1; ++j) {
                FieldElement dot = F.zero();
                for (uint32_t t = 0; t < i; ++t) dot = F.add(dot, F.mul(row[t], v[t]));
                c[j] = F.neg(dot);
                if (j <= i) {
                    Vec nv(i, F.zero());
                    for (uint32_t r = 0; r < i; ++r)
                        for (uint32_t t = 0; t < i; ++t)
                            nv[r] = F.add(nv[r], F.mul(M.at(r, t), v[t]));
                    v = std::move(nv);
                }
            }
        }
        std::vector<FieldElement> next(i + 2, F.zero());
        for (uint32_t r = 0; r < i + 2; ++r)
            for (uint32_t t = 0; t < poly.size() && t <= r; ++t)
                next[r] = F.add(next[r], F.mul(c[r - t], poly[t]));
        poly = std::move(next);
    }
    std::reverse(poly.begin(), poly.end());
    return poly;
}

std::vector<Vec> rref(const FieldCtx& F, std::vector<Vec> rows) {
    if (rows.empty()) return rows;
    uint32_t ncols = (uint32_t)rows[0].size();
    uint32_t r = 0;
    for (uint32_t col = 0; col < ncols && r < rows.size(); ++col) {
        uint32_t piv = r;
        while (piv < rows.size() && F.is_zero(rows[piv][col])) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        FieldElement pinv = F.inv(rows[r][col]);
        for (uint32_t j = 0; j < ncols; ++j) rows[r][j] = F.mul(rows[r][j], pinv);
        for (uint32_t i = 0; i < rows.size(); ++i) {
            if (i == r || F.is_zero(rows[i][col])) continue;
            FieldElement factor = rows[i][col];
            for (uint32_t j = 0; j < ncols; ++j)
                rows[i][j] = F.sub(rows[i][j], F.mul(factor, rows[r][j]));
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

uint32_t space_rank(const FieldCtx& F, const std::vector<Vec>& rows) {
    return (uint32_t)rref(F, rows).size();
}

std::vector<Vec> nullspace(const FieldCtx& F, const std::vector<Vec>& rows, uint32_t ncols) {
    std::vector<Vec> R = rref(F, rows);
    std::vector<int> pivot_of_col(ncols, -1);
    for (uint32_t i = 0; i < R.size(); ++i) {
        uint32_t col = 0;
        while (col < ncols && F.is_zero(R[i][col])) ++col;
        pivot_of_col[col] = (int)i;
    }
    std::vector<Vec> basis;
    for (uint32_t fc = 0; fc < ncols; ++fc) {
        if (pivot_of_col[fc] >= 0) continue;
        Vec v(ncols, F.zero());
        v[fc] = F.one();
        for (uint32_t c = 0; c < ncols; ++c)
            if (pivot_of_col[c] >= 0) v[c] = F.neg(R[pivot_of_col[c]][fc]);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vec> intersect_spaces(const FieldCtx& F, const std::vector<Vec>& U,
                                  const std::vector<Vec>& W, uint32_t n) {
    if (U.empty() || W.empty()) return {};
    // Solve sum u_j U[j] = sum w_j W[j]: nullspace of the n x (|U|+|W|)
    // system [U^T | -W^T], then read the combination back through U.
    std::vector<Vec> sys(n, Vec(U.size() + W.size(), F.zero()));
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = 0; j < U.size(); ++j) sys[i][j] = U[j][i];
        for (uint32_t j = 0; j < W.size(); ++j) sys[i][U.size() + j] = F.neg(W[j][i]);
    }
    std::vector<Vec> combos = nullspace(F, sys, (uint32_t)(U.size() + W.size()));
    std::vector<Vec> result;
    for (const Vec& c : combos) {
        Vec x(n, F.zero());
        for (uint32_t j = 0; j < U.size(); ++j)
            for (uint32_t i = 0; i < n; ++i) x[i] = F.add(x[i], F.mul(c[j], U[j][i]));
        result.push_back(std::move(x));
    }
    return rref(F, std::move(result));
}

int fpoly_deg(const FPoly& f) { return (int)f.size() - 1; }

FPoly fpoly_trim(const FieldCtx& F, FPoly f) {
    while (!f.empty() && F.is_zero(f.back())) f.pop_back();
    return f;
}

FPoly fpoly_mul(const FieldCtx& F, const FPoly& f, const FPoly& g) {
    if (f.empty() || g.empty()) return {};
    FPoly r(f.size() + g.size() - 1, F.zero());
    for (size_t i = 0; i < f.size(); ++i) {
        if (F.is_zero(f[i])) continue;
        for (size_t j = 0; j < g.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(f[i], g[j]));
    }
    return fpoly_trim(F, std::move(r));
}

std::pair<FPoly, FPoly> fpoly_divrem(const FieldCtx& F, FPoly f, const FPoly& g) {
    if (g.empty()) throw std::invalid_argument("polynomial division by zero");
    int dg = fpoly_deg(g);
    FieldElement linv = F.inv(g.back());
    if (fpoly_deg(f) < dg) return {{}, fpoly_trim(F, std::move(f))};
    FPoly quot(f.size() - dg, F.zero());
    for (int i = fpoly_deg(f); i >= dg; --i) {
        if (F.is_zero(f[i])) continue;
        FieldElement coef = F.mul(f[i], linv);
        quot[i - dg] = coef;
        for (int j = 0; j <= dg; ++j) f[i - dg + j] = F.sub(f[i - dg + j], F.mul(coef, g[j]));
    }
    return {fpoly_trim(F, std::move(quot)), fpoly_trim(F, std::move(f))};
}

FPoly fpoly_monic(const FieldCtx& F, FPoly f) {
    f = fpoly_trim(F, std::move(f));
    if (f.empty()) return f;
    FieldElement linv = F.inv(f.back());
    for (FieldElement& c : f) c = F.mul(c, linv);
    return f;
}

FPoly fpoly_gcd(const FieldCtx& F, FPoly f, FPoly g) {
    f = fpoly_trim(F, std::move(f));
    g = fpoly_trim(F, std::move(g));
    while (!g.empty()) {
        FPoly r = fpoly_divrem(F, std::move(f), g).second;
        f = std::move(g);
        g = std::move(r);
    }
    return fpoly_monic(F, std::move(f));
}

FPoly fpoly_derivative(const FieldCtx& F, const FPoly& f) {
    if (f.size() <= 1) return {};
    FPoly r(f.size() - 1, F.zero());
    for (size_t i = 1; i < f.size(); ++i)
        r[i - 1] = F.mul(f[i], F.from_int(i % F.p()));
    return fpoly_trim(F, std::move(r));
}

FPoly fpoly_powmod(const FieldCtx& F, FPoly base, uint64_t exp, const FPoly& mod) {
    base = fpoly_divrem(F, std::move(base), mod).second;
    FPoly r{F.one()};
    r = fpoly_divrem(F, std::move(r), mod).second;
    while (exp > 0) {
        if (exp & 1) r = fpoly_divrem(F, fpoly_mul(F, r, base), mod).second;
        exp >>= 1;
        if (exp > 0) base = fpoly_divrem(F, fpoly_mul(F, base, base), mod).second;
    }
    return r;
}

FieldElement fpoly_eval(const FieldCtx& F, const FPoly& f, const FieldElement& x) {
    FieldElement r = F.zero();
    for (size_t i = f.size(); i > 0; --i) r = F.add(F.mul(r, x), f[i - 1]);
    return r;
}

FPoly fpoly_radical(const FieldCtx& F, FPoly f) {
    f = fpoly_monic(F, std::move(f));
    if (fpoly_deg(f) <= 1) return f;
    FPoly fp = fpoly_derivative(F, f);
    if (fp.empty()) {
        // f(x) = g(x^p); take the p-th root coefficient-wise (the inverse
        // Frobenius on GF(q) is a -> a^(q/p)) and recurse.
        uint64_t inv_frob = F.q() / F.p();
        FPoly g((f.size() - 1) / F.p() + 1, F.zero());
        for (size_t i = 0; i < f.size(); i += F.p()) g[i / F.p()] = F.pow(f[i], inv_frob);
        return fpoly_radical(F, std::move(g));
    }
    FPoly g = fpoly_gcd(F, f, fp);
    if (fpoly_deg(g) == 0) return f; // already squarefree
    FPoly s = fpoly_divrem(F, f, g).first; // squarefree, may miss factors inside g
    FPoly rg = fpoly_radical(F, std::move(g));
    // rad(f) = lcm(s, rad(g))
    FPoly common = fpoly_gcd(F, s, rg);
    return fpoly_monic(F, fpoly_mul(F, fpoly_divrem(F, s, common).first, rg));
}

uint32_t splitting_degree(const FieldCtx& F, const FPoly& f) {
    FPoly r = fpoly_radical(F, f);
    if (fpoly_deg(r) <= 1) return 1;
    FPoly x{F.zero(), F.one()};
    FPoly t = x;
    // After m Frobenius steps t = x^(q^m) mod r; t == x iff every
    // irreducible factor degree of r divides m.  Terminates by m = lcm of
    // the factor degrees; 10^4 is far above any lcm reachable at deg <= 64.
    for (uint32_t m = 1; m <= 10000; ++m) {
        t = fpoly_powmod(F, std::move(t), F.q(), r);
        if (t == x) return m;
    }
    throw std::logic_error("splitting degree iteration did not converge");
}

namespace {

FPoly fpoly_sub(const FieldCtx& F, FPoly f, const FPoly& g) {
    if (f.size() < g.size()) f.resize(g.size(), F.zero());
    for (size_t i = 0; i < g.size(); ++i) f[i] = F.sub(f[i], g[i]);
    return fpoly_trim(F, std::move(f));
}

// Splits a monic product of distinct linear factors into roots.  Random
// gcd splitting: in odd characteristic (x+c)^((q-1)/2) - 1 vanishes on
// about half the shifted roots; in characteristic 2 the same role is
// played by the trace polynomial of a random multiple of x.
void split_linear(const FieldCtx& F, const FPoly& g, std::mt19937_64& rng,
                  std::vector<FieldElement>& roots) {
    int d = fpoly_deg(g);
    if (d <= 0) return;
    if (d == 1) {
        roots.push_back(F.neg(g[0]));
        return;
    }
    FPoly x{F.zero(), F.one()};
    for (uint32_t tries = 0; tries < 1000; ++tries) {
        FPoly h;
        if (F.p() != 2) {
            FPoly shifted{F.from_int(rng() % F.q()), F.one()};
            h = fpoly_powmod(F, shifted, (F.q() - 1) / 2, g);
            h = fpoly_sub(F, std::move(h), {F.one()});
        } else {
            FieldElement c = F.from_int(1 + rng() % (F.q() - 1));
            FPoly t = fpoly_trim(F, {F.zero(), c}); // c*x
            h = t;
            for (uint32_t i = 1; i < F.e(); ++i) { // q = 2^e here
                t = fpoly_divrem(F, fpoly_mul(F, t, t), g).second;
                h = fpoly_trim(F, [&] {
                    FPoly sum = h;
                    if (sum.size() < t.size()) sum.resize(t.size(), F.zero());
                    for (size_t j = 0; j < t.size(); ++j) sum[j] = F.add(sum[j], t[j]);
                    return sum;
                }());
            }
        }
        FPoly d1 = fpoly_gcd(F, h, g);
        int dd = fpoly_deg(d1);
        if (dd <= 0 || dd >= d) continue;
        split_linear(F, d1, rng, roots);
        split_linear(F, fpoly_divrem(F, g, d1).first, rng, roots);
        return;
    }
    throw std::logic_error("root splitting did not converge");
}

} // namespace

std::vector<FieldElement> fpoly_roots(const FieldCtx& F, const FPoly& f) {
    FPoly g = fpoly_trim(F, f);
    if (g.empty()) throw std::invalid_argument("the zero polynomial has every root");
    if (fpoly_deg(g) == 0) return {};
    g = fpoly_monic(F, std::move(g));
    FPoly x{F.zero(), F.one()};
    FPoly xq = fpoly_powmod(F, x, F.q(), g);
    FPoly lin = fpoly_gcd(F, fpoly_sub(F, xq, x), g);
    std::vector<FieldElement> roots;
    std::mt19937_64 rng(0x1f2e3d4c5b6a7988ull);
    split_linear(F, fpoly_monic(F, std::move(lin)), rng, roots);
    std::sort(roots.begin(), roots.end(),
              [&](const FieldElement& a, const FieldElement& b) { return F.less(a, b); });
    return roots;
}

FieldHom find_embedding(const FieldCtx& src, const FieldCtx& dst) {
    if (src.p() != dst.p() || dst.e() % src.e() != 0)
        throw std::invalid_argument("no embedding between these fields");
    // Lift the source modulus to dst coefficient-wise and scan all of dst
    // for a root.  For a prime source field the modulus is x, so the scan
    // hits 0 immediately.
    FPoly m(src.e() + 1, dst.zero());
    for (uint32_t i = 0; i < src.e(); ++i) m[i] = dst.from_int(src.modulus()[i]);
    m[src.e()] = dst.one();
    for (uint64_t v = 0; v < dst.q(); ++v) {
        FieldElement cand = dst.from_int(v);
        if (dst.is_zero(fpoly_eval(dst, m, cand))) return FieldHom{&src, &dst, cand};
    }
    throw std::logic_error("no root of source modulus in target field");
}

FieldElement map_element(const FieldHom& h, const FieldElement& a) {
    h.src->to_int(a); // validates against the source field
    FieldElement r = h.dst->zero();
    for (uint32_t i = h.src->e(); i > 0; --i)
        r = h.dst->add(h.dst->mul(r, h.x_image), h.dst->from_int(a.coeffs[i - 1]));
    return r;
}

Mat map_matrix(const FieldHom& h, const Mat& A) {
    Mat R = mat_zero(*h.dst, A.n);
    for (size_t i = 0; i < A.a.size(); ++i) R.a[i] = map_element(h, A.a[i]);
    return R;
}

} // namespace pra
