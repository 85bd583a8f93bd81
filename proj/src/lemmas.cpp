#include "pra/lemmas.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pra {

// ---------------------------------------------------------------------------
// Abelian subgroup machinery.
// ---------------------------------------------------------------------------

std::vector<uint64_t> ab_closure(const AbelianGroup& K, const std::vector<AbVec>& gens) {
    uint64_t order = K.order();
    if (order > 1000000) throw cap_exceeded("abelian group too large for closure enumeration");
    for (const auto& g : gens) K.check(g);

    std::vector<uint8_t> seen(order, 0);
    std::vector<uint64_t> members{K.index_of(K.zero())};
    seen[members[0]] = 1;
    // Nonnegative generator combinations exhaust the subgroup because the
    // group is finite (inverses are repeated additions).
    for (size_t head = 0; head < members.size(); ++head) {
        AbVec x = K.vector_of(members[head]);
        for (const auto& g : gens) {
            uint64_t y = K.index_of(K.add(x, g));
            if (!seen[y]) {
                seen[y] = 1;
                members.push_back(y);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

uint64_t ab_element_order(const AbelianGroup& K, const AbVec& a) {
    K.check(a);
    uint64_t ord = 1;
    for (size_t i = 0; i < K.factors.size(); ++i) {
        uint64_t f = K.factors[i];
        uint64_t o = f / std::gcd<uint64_t>(f, a[i]);
        ord = std::lcm(ord, o);
    }
    return ord;
}

namespace {

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> ps;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        ps.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

int64_t mod_inverse(int64_t a, int64_t m) {
    int64_t t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
    while (nr != 0) {
        int64_t q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw std::logic_error("inverse of a noninvertible residue");
    return ((t % m) + m) % m;
}

} // namespace

std::vector<int64_t> gaschuetz_exponents(const AbelianGroup& K, const AbVec& a,
                                         const std::vector<AbVec>& bs) {
    K.check(a);
    if (bs.empty()) throw std::invalid_argument("need at least one b element");
    for (const auto& b : bs) K.check(b);
    size_t n = bs.size();

    std::vector<AbVec> l_gens{a};
    l_gens.insert(l_gens.end(), bs.begin(), bs.end());
    std::vector<uint64_t> L = ab_closure(K, l_gens);

    uint64_t exponent = 1;
    for (const auto& g : l_gens) exponent = std::lcm(exponent, ab_element_order(K, g));

    // Membership of x in the span of S inside L/pL, tested on lifts: the
    // span lifts to the subgroup generated by S and p*L.
    auto in_span_mod_p = [&](uint64_t p, const AbVec& x, const std::vector<AbVec>& S) {
        std::vector<AbVec> gens;
        for (const auto& g : l_gens) gens.push_back(K.smul(p, g));
        gens.insert(gens.end(), S.begin(), S.end());
        auto span = ab_closure(K, gens);
        return std::binary_search(span.begin(), span.end(), K.index_of(x));
    };

    std::vector<uint64_t> primes = prime_factors(exponent);
    std::vector<std::vector<uint8_t>> residue(primes.size(), std::vector<uint8_t>(n, 0));
    for (size_t pi = 0; pi < primes.size(); ++pi) {
        uint64_t p = primes[pi];
        // A b whose image is spanned by the others can absorb one copy of
        // a; if no such b exists the images are independent and must span
        // the quotient on their own, with a already inside.
        size_t dependent = n;
        for (size_t i = 0; i < n && dependent == n; ++i) {
            std::vector<AbVec> others;
            for (size_t j = 0; j < n; ++j)
                if (j != i) others.push_back(bs[j]);
            if (in_span_mod_p(p, bs[i], others)) dependent = i;
        }
        if (dependent < n) {
            residue[pi][dependent] = 1;
        } else if (!in_span_mod_p(p, a, bs)) {
            throw std::invalid_argument("the b-list is too short for the generated subgroup");
        }
    }

    std::vector<int64_t> m(n, 0);
    for (size_t i = 0; i < n; ++i) {
        int64_t value = 0, modulus = 1;
        for (size_t pi = 0; pi < primes.size(); ++pi) {
            int64_t p = (int64_t)primes[pi];
            int64_t r = residue[pi][i];
            int64_t shift = ((r - value) % p + p) % p;
            value += modulus * ((shift * mod_inverse(modulus % p, p)) % p);
            modulus *= p;
        }
        m[i] = value;
    }

    std::vector<AbVec> new_gens;
    for (size_t i = 0; i < n; ++i) new_gens.push_back(K.add(K.smul((uint64_t)m[i], a), bs[i]));
    if (ab_closure(K, new_gens) != L)
        throw std::logic_error("exponent verification failed");
    return m;
}

std::vector<AbVec> frattini(const AbelianGroup& K) {
    std::vector<AbVec> gens;
    for (size_t i = 0; i < K.factors.size(); ++i) {
        uint64_t rad = 1;
        for (uint64_t p : prime_factors(K.factors[i])) rad *= p;
        AbVec g = K.zero();
        g[i] = (uint32_t)(rad % K.factors[i]);
        gens.push_back(std::move(g));
    }
    std::vector<AbVec> out;
    for (uint64_t idx : ab_closure(K, gens)) out.push_back(K.vector_of(idx));
    return out;
}

// ---------------------------------------------------------------------------
// Common eigenspaces and greedy subset selection.
// ---------------------------------------------------------------------------

namespace {

using eigen_pairs = std::vector<std::pair<FieldElement, std::vector<Vec>>>;

eigen_pairs matrix_eigen_pairs(const FieldCtx& ext, const Mat& M) {
    eigen_pairs pairs;
    for (const auto& lam : fpoly_roots(ext, charpoly(ext, M))) {
        Mat A = M;
        for (uint32_t i = 0; i < A.n; ++i) A.at(i, i) = ext.sub(A.at(i, i), lam);
        std::vector<Vec> rows;
        for (uint32_t i = 0; i < A.n; ++i)
            rows.emplace_back(A.a.begin() + (size_t)i * A.n, A.a.begin() + (size_t)(i + 1) * A.n);
        pairs.emplace_back(lam, nullspace(ext, rows, A.n));
    }
    return pairs;
}

uint64_t spaces_weight(const std::vector<std::vector<Vec>>& spaces) {
    uint64_t w = 0;
    for (const auto& s : spaces) w += (uint64_t)s.size() * s.size();
    return w;
}

std::vector<std::vector<Vec>> refine_spaces(const FieldCtx& ext, uint32_t n,
                                            const std::vector<std::vector<Vec>>& spaces,
                                            const eigen_pairs& pairs) {
    std::vector<std::vector<Vec>> out;
    for (const auto& s : spaces)
        for (const auto& [lam, eig] : pairs) {
            (void)lam;
            auto inter = intersect_spaces(ext, s, eig, n);
            if (!inter.empty()) out.push_back(std::move(inter));
        }
    return out;
}

std::vector<Vec> standard_basis(const FieldCtx& F, uint32_t n) {
    std::vector<Vec> rows;
    for (uint32_t i = 0; i < n; ++i) {
        Vec row(n, F.zero());
        row[i] = F.one();
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

EigenDecomposition common_eigenspaces(const FieldCtx& F, uint32_t n, const std::vector<Mat>& mats) {
    if (n == 0) throw std::invalid_argument("dimension must be positive");
    EigenDecomposition d;
    d.n = n;
    d.m = 1;
    for (const auto& M : mats) {
        if (M.n != n) throw std::invalid_argument("matrix size mismatch");
        d.m = std::lcm(d.m, splitting_degree(F, charpoly(F, M)));
    }
    d.ext = std::make_shared<FieldCtx>(F.p(), F.e() * d.m);
    d.emb = find_embedding(F, *d.ext);

    EigenSpace whole;
    whole.basis = standard_basis(*d.ext, n);
    d.spaces.push_back(std::move(whole));

    for (const auto& M : mats) {
        auto pairs = matrix_eigen_pairs(*d.ext, map_matrix(d.emb, M));
        std::vector<EigenSpace> refined;
        for (const auto& s : d.spaces)
            for (const auto& [lam, eig] : pairs) {
                auto inter = intersect_spaces(*d.ext, s.basis, eig, n);
                if (inter.empty()) continue;
                EigenSpace ns;
                ns.eigenvalues = s.eigenvalues;
                ns.eigenvalues.push_back(lam);
                ns.basis = std::move(inter);
                refined.push_back(std::move(ns));
            }
        d.spaces = std::move(refined);
    }
    return d;
}

uint64_t w_potential(const EigenDecomposition& d) {
    uint64_t w = 0;
    for (const auto& s : d.spaces) w += (uint64_t)s.dim() * s.dim();
    return w;
}

uint64_t w_potential(const FieldCtx& F, uint32_t n, const std::vector<Mat>& mats) {
    return w_potential(common_eigenspaces(F, n, mats));
}

std::vector<uint32_t> greedy_line_subset(const FieldCtx& F, uint32_t n, const std::vector<Mat>& T) {
    if (T.empty()) throw std::invalid_argument("greedy selection needs a nonempty set");
    if (n == 0) throw std::invalid_argument("dimension must be positive");

    uint32_t m = 1;
    for (const auto& M : T) {
        if (M.n != n) throw std::invalid_argument("matrix size mismatch");
        m = std::lcm(m, splitting_degree(F, charpoly(F, M)));
    }
    FieldCtx ext(F.p(), F.e() * m);
    FieldHom emb = find_embedding(F, ext);
    std::vector<eigen_pairs> pairs;
    for (const auto& M : T) pairs.push_back(matrix_eigen_pairs(ext, map_matrix(emb, M)));

    std::vector<std::vector<Vec>> start{standard_basis(ext, n)};
    std::vector<std::vector<Vec>> target = start;
    for (const auto& pr : pairs) target = refine_spaces(ext, n, target, pr);
    uint64_t w_target = spaces_weight(target);

    std::vector<uint32_t> subset;
    std::vector<uint8_t> chosen(T.size(), 0);
    std::vector<std::vector<Vec>> current = start;
    uint64_t w_current = spaces_weight(current);

    while (w_current > w_target) {
        bool advanced = false;
        for (uint32_t idx = 0; idx < T.size() && !advanced; ++idx) {
            if (chosen[idx]) continue;
            auto refined = refine_spaces(ext, n, current, pairs[idx]);
            uint64_t w = spaces_weight(refined);
            if (w < w_current) {
                chosen[idx] = 1;
                subset.push_back(idx);
                current = std::move(refined);
                w_current = w;
                advanced = true;
            }
        }
        if (!advanced) throw std::logic_error("no element decreases the potential");
        if (subset.size() > (size_t)n * n)
            throw std::logic_error("greedy selection exceeded its size bound");
    }
    return subset;
}

namespace {

std::vector<std::vector<uint8_t>> subsets_of_size(uint32_t n, uint32_t r) {
    std::vector<std::vector<uint8_t>> out;
    std::vector<uint8_t> cur(r);
    for (uint32_t i = 0; i < r; ++i) cur[i] = (uint8_t)i;
    while (true) {
        out.push_back(cur);
        int i = (int)r - 1;
        while (i >= 0 && cur[i] == n - r + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (uint32_t j = i + 1; j < r; ++j) cur[j] = (uint8_t)(cur[j - 1] + 1);
    }
    return out;
}

FieldElement minor_det(const FieldCtx& F, const Mat& M, const std::vector<uint8_t>& rows,
                       const std::vector<uint8_t>& cols) {
    Mat S = mat_zero(F, (uint32_t)rows.size());
    for (uint32_t i = 0; i < rows.size(); ++i)
        for (uint32_t j = 0; j < cols.size(); ++j) S.at(i, j) = M.at(rows[i], cols[j]);
    return mat_det(F, std::move(S));
}

} // namespace

Mat exterior_block(const FieldCtx& F, const Mat& M) {
    uint32_t n = M.n;
    if (n == 0 || n > 12) throw std::invalid_argument("dimension out of range for exterior powers");
    uint32_t total = (1u << n) - 1;
    Mat B = mat_zero(F, total);
    uint32_t offset = 0;
    for (uint32_t r = 1; r <= n; ++r) {
        auto subs = subsets_of_size(n, r);
        for (uint32_t i = 0; i < subs.size(); ++i)
            for (uint32_t j = 0; j < subs.size(); ++j)
                B.at(offset + i, offset + j) = minor_det(F, M, subs[i], subs[j]);
        offset += (uint32_t)subs.size();
    }
    return B;
}

std::vector<uint32_t> greedy_subspace_subset(const FieldCtx& F, uint32_t n,
                                             const std::vector<Mat>& T) {
    if (n > 4) throw cap_exceeded("exterior block dimension cap is n <= 4");
    if (n == 0) throw std::invalid_argument("dimension must be positive");
    std::vector<Mat> blocks;
    for (const auto& M : T) {
        if (M.n != n) throw std::invalid_argument("matrix size mismatch");
        blocks.push_back(exterior_block(F, M));
    }
    return greedy_line_subset(F, (1u << n) - 1, blocks);
}

std::optional<uint32_t> find_rss_in_coset(const GroupTable& G, uint32_t x,
                                          std::vector<uint32_t> D) {
    if (G.family() != GroupFamily::sl2 && G.family() != GroupFamily::psl2 &&
        G.family() != GroupFamily::pgl2)
        throw std::invalid_argument("regular semisimple search needs a matrix group");
    if (x >= G.order()) throw std::invalid_argument("element id out of range");
    std::sort(D.begin(), D.end());
    D.erase(std::unique(D.begin(), D.end()), D.end());
    for (uint32_t delta : D) {
        if (delta >= G.order()) throw std::invalid_argument("element id out of range");
        uint32_t y = G.mul(x, delta);
        if (G.is_regular_semisimple(y)) return y;
    }
    return std::nullopt;
}

} // namespace pra
