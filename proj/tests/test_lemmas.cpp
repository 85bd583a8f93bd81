#include "doctest.h"

#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "pra/lemmas.hpp"

using namespace pra;

namespace {

Mat mat_from(const FieldCtx& F, std::vector<uint64_t> entries, uint32_t n) {
    Mat M = mat_zero(F, n);
    for (uint32_t i = 0; i < n * n; ++i) M.a[i] = F.from_int(entries[i]);
    return M;
}

} // namespace

TEST_CASE("abelian closures") {
    AbelianGroup K = AbelianGroup::from_moduli({6});
    CHECK(ab_closure(K, {{2}}) == std::vector<uint64_t>{0, 2, 4});
    CHECK(ab_closure(K, {{1}}).size() == 6);
    CHECK(ab_closure(K, {}) == std::vector<uint64_t>{0});

    AbelianGroup K2 = AbelianGroup::from_moduli({2, 4});
    CHECK(ab_closure(K2, {{1, 0}, {0, 2}}).size() == 4);

    CHECK(ab_element_order(K, {5}) == 6);
    CHECK(ab_element_order(K, {2}) == 3);
    CHECK(ab_element_order(K, {0}) == 1);
    CHECK(ab_element_order(K2, {1, 2}) == 2);
}

TEST_CASE("exponent solving: worked instance") {
    AbelianGroup K = AbelianGroup::from_moduli({2, 2});
    AbVec a{1, 1};
    std::vector<AbVec> bs{{1, 0}, {1, 0}};
    auto m = gaschuetz_exponents(K, a, bs);
    REQUIRE(m.size() == 2);
    // frozen output of the deterministic scan; any 0/1 split works here
    CHECK(m == std::vector<int64_t>{1, 0});

    // the shifted list generates the same subgroup
    std::vector<AbVec> shifted;
    for (size_t i = 0; i < bs.size(); ++i)
        shifted.push_back(K.add(K.smul((uint64_t)m[i], a), bs[i]));
    std::vector<AbVec> orig{a, bs[0], bs[1]};
    CHECK(ab_closure(K, shifted) == ab_closure(K, orig));
}

TEST_CASE("exponent solving: zero shift when the b's already generate") {
    AbelianGroup K = AbelianGroup::from_moduli({12});
    auto m = gaschuetz_exponents(K, {4}, {{1}});
    CHECK(m == std::vector<int64_t>{0});

    AbelianGroup K2 = AbelianGroup::from_moduli({5, 5});
    auto m2 = gaschuetz_exponents(K2, {1, 0}, {{0, 1}, {1, 1}});
    CHECK(m2 == std::vector<int64_t>{0, 0});
}

TEST_CASE("exponent solving: infeasible instances are rejected") {
    AbelianGroup K = AbelianGroup::from_moduli({2, 2});
    // <m(1,0) + (1,1)> is cyclic, never the rank-2 subgroup <(1,0),(1,1)>
    CHECK_THROWS_AS(gaschuetz_exponents(K, {1, 0}, {{1, 1}}), std::invalid_argument);
}

TEST_CASE("exponent solving agrees with exhaustive search on random instances") {
    uint64_t state = 2024;
    auto rnd = [&](uint64_t n) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return (state >> 33) % n;
    };
    std::vector<std::vector<uint64_t>> shapes{{2, 2}, {4}, {2, 4}, {3, 9}, {30}, {2, 4, 8}};
    int solved = 0;
    for (int trial = 0; solved < 40; ++trial) {
        REQUIRE(trial < 4000);
        AbelianGroup K = AbelianGroup::from_moduli(shapes[rnd(shapes.size())]);
        size_t nb = 1 + rnd(2);
        AbVec a = K.vector_of(rnd(K.order()));
        std::vector<AbVec> bs;
        for (size_t i = 0; i < nb; ++i) bs.push_back(K.vector_of(rnd(K.order())));

        auto brute = testutil::gaschuetz_brute(K, a, bs);
        if (!brute.has_value()) continue; // instance too large to scan
        bool brute_ok = testutil::brute_found(brute, bs.size());

        try {
            auto m = gaschuetz_exponents(K, a, bs);
            CHECK(brute_ok); // solver found one, oracle must agree one exists
            std::vector<AbVec> shifted, orig{a};
            for (size_t i = 0; i < bs.size(); ++i) {
                shifted.push_back(K.add(K.smul((uint64_t)m[i], a), bs[i]));
                orig.push_back(bs[i]);
            }
            CHECK(ab_closure(K, shifted) == ab_closure(K, orig));
            ++solved;
        } catch (const std::invalid_argument&) {
            CHECK(!brute_ok); // solver says impossible, oracle must find nothing
        }
    }
}

TEST_CASE("frattini subgroups, frozen values") {
    AbelianGroup z4 = AbelianGroup::from_moduli({4});
    auto f4 = frattini(z4);
    REQUIRE(f4.size() == 2);
    CHECK(f4[0] == AbVec{0});
    CHECK(f4[1] == AbVec{2});

    AbelianGroup v = AbelianGroup::from_moduli({2, 2});
    CHECK(frattini(v).size() == 1); // elementary abelian: trivial

    AbelianGroup z12 = AbelianGroup::from_moduli({12});
    auto f12 = frattini(z12);
    REQUIRE(f12.size() == 2);
    CHECK(f12[1] == AbVec{6});
}

TEST_CASE("frattini equals the literal maximal-subgroup intersection up to order 64") {
    std::vector<std::vector<uint64_t>> shapes{{4},    {2, 2}, {12},   {8},     {2, 4},
                                              {9},    {27},   {2, 2, 2}, {16},  {2, 16},
                                              {36},   {5, 5}, {64},   {2, 4, 8}};
    for (const auto& sh : shapes) {
        AbelianGroup K = AbelianGroup::from_moduli(sh);
        REQUIRE(K.order() <= 64);
        auto lit = testutil::frattini_literal(K);
        auto got = frattini(K);
        REQUIRE(got.size() == lit.size());
        for (size_t i = 0; i < got.size(); ++i) CHECK(K.index_of(got[i]) == lit[i]);
    }
}

TEST_CASE("common eigenspaces, frozen examples") {
    FieldCtx F(5, 1);

    // empty set: the whole space, w = n^2
    EigenDecomposition none = common_eigenspaces(F, 3, {});
    REQUIRE(none.spaces.size() == 1);
    CHECK(none.spaces[0].dim() == 3);
    CHECK(w_potential(none) == 9);
    CHECK(none.m == 1);

    // diag(1,2): two eigenlines, w = 2
    EigenDecomposition d = common_eigenspaces(F, 2, {mat_from(F, {1, 0, 0, 2}, 2)});
    CHECK(d.spaces.size() == 2);
    CHECK(w_potential(d) == 2);

    // {[[0,1],[1,0]], [[0,2],[3,0]]}: no common eigenline, w = 0
    std::vector<Mat> pair{mat_from(F, {0, 1, 1, 0}, 2), mat_from(F, {0, 2, 3, 0}, 2)};
    CHECK(w_potential(F, 2, pair) == 0);

    // unipotent [[1,1],[0,1]]: a single eigenline, w = 1
    EigenDecomposition u = common_eigenspaces(F, 2, {mat_from(F, {1, 1, 0, 1}, 2)});
    REQUIRE(u.spaces.size() == 1);
    CHECK(u.spaces[0].dim() == 1);
    CHECK(w_potential(u) == 1);

    // eigenvalues that need the quadratic extension
    FieldCtx F3(3, 1);
    EigenDecomposition e = common_eigenspaces(F3, 2, {mat_from(F3, {0, 2, 1, 0}, 2)});
    CHECK(e.m == 2);
    CHECK(e.ext->q() == 9);
    CHECK(e.spaces.size() == 2);
    for (const auto& s : e.spaces) CHECK(s.eigenvalues.size() == 1);
}

TEST_CASE("w is monotone under adding matrices") {
    FieldCtx F(5, 1);
    uint64_t state = 99;
    auto rnd = [&]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return (state >> 33) % 5;
    };
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Mat> S;
        uint64_t prev = ~0ull;
        for (int step = 0; step < 3; ++step) {
            Mat M = mat_zero(F, 2);
            do {
                for (auto& x : M.a) x = F.from_int(rnd());
            } while (!mat_invertible(F, M));
            S.push_back(M);
            uint64_t w = w_potential(F, 2, S);
            CHECK(w <= prev);
            prev = w;
        }
    }
}

TEST_CASE("greedy line selection") {
    FieldCtx F(5, 1);
    // scalars reduce nothing and are never selected
    CHECK(greedy_line_subset(F, 2, {mat_identity(F, 2)}).empty());

    Mat scal = mat_from(F, {2, 0, 0, 2}, 2);
    Mat diag = mat_from(F, {2, 0, 0, 3}, 2);
    Mat rot = mat_from(F, {0, 1, 4, 0}, 2);
    auto sel = greedy_line_subset(F, 2, {scal, diag, rot});
    CHECK(sel == std::vector<uint32_t>{1, 2});

    // selection reproduces the full set's invariant lines (oracle check)
    std::vector<Mat> T{diag, rot, mat_from(F, {1, 1, 0, 1}, 2)};
    auto s2 = greedy_line_subset(F, 2, T);
    std::vector<Mat> picked;
    for (uint32_t i : s2) picked.push_back(T[i]);
    CHECK(w_potential(F, 2, picked) == w_potential(F, 2, T));
    CHECK(testutil::invariant_lines(F, 2, picked) == testutil::invariant_lines(F, 2, T));
    CHECK(s2.size() <= 4);
}

TEST_CASE("greedy on an irreducible pair drives w to zero") {
    // the two matrices generate an irreducible action: no invariant line
    FieldCtx F(3, 1);
    Mat a = mat_from(F, {0, 2, 1, 0}, 2);
    Mat b = mat_from(F, {1, 1, 0, 1}, 2);
    CHECK(w_potential(F, 2, {a, b}) == 0);
    auto sel = greedy_line_subset(F, 2, {a, b});
    CHECK(!sel.empty());
    std::vector<Mat> picked;
    for (uint32_t i : sel) picked.push_back(i == 0 ? a : b);
    CHECK(w_potential(F, 2, picked) == 0);
    CHECK(testutil::invariant_lines(F, 2, {a, b}).empty());
}

TEST_CASE("exterior block structure") {
    FieldCtx F(5, 1);
    // n = 2: blocks are M itself and det(M)
    Mat M = mat_from(F, {1, 2, 3, 4}, 2);
    Mat B = exterior_block(F, M);
    REQUIRE(B.n == 3);
    CHECK(B.at(0, 0) == M.at(0, 0));
    CHECK(B.at(1, 1) == M.at(1, 1));
    CHECK(B.at(2, 2) == mat_det(F, M));
    CHECK(F.is_zero(B.at(0, 2)));
    CHECK(F.is_zero(B.at(2, 0)));

    // multiplicative: block(AB) = block(A) block(B)
    uint64_t state = 7;
    auto rnd = [&]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return (state >> 33) % 5;
    };
    for (int trial = 0; trial < 5; ++trial) {
        Mat A = mat_zero(F, 3), C = mat_zero(F, 3);
        do {
            for (auto& x : A.a) x = F.from_int(rnd());
        } while (!mat_invertible(F, A));
        do {
            for (auto& x : C.a) x = F.from_int(rnd());
        } while (!mat_invertible(F, C));
        CHECK(exterior_block(F, mat_mul(F, A, C)) ==
              mat_mul(F, exterior_block(F, A), exterior_block(F, C)));
    }
}

TEST_CASE("greedy subspace selection matches brute-force invariant subspaces") {
    FieldCtx F(3, 1);
    // upper-triangular pair: invariant subspaces are 0, the e1 line, V
    Mat a = mat_from(F, {1, 1, 0, 1}, 2);
    Mat b = mat_from(F, {2, 0, 0, 1}, 2);
    auto sel = greedy_subspace_subset(F, 2, {a, b});
    std::vector<Mat> picked;
    for (uint32_t i : sel) picked.push_back(i == 0 ? a : b);
    auto inv_sel = testutil::invariant_subspaces(F, 2, picked);
    auto inv_all = testutil::invariant_subspaces(F, 2, {a, b});
    CHECK(inv_sel == inv_all);
    REQUIRE(inv_all.size() == 3);

    // irreducible pair over GF(3): only 0 and V survive
    Mat r = mat_from(F, {0, 2, 1, 0}, 2);
    auto inv_irr = testutil::invariant_subspaces(F, 2, {r, a});
    CHECK(inv_irr.size() == 2);
    auto sel_irr = greedy_subspace_subset(F, 2, {r, a});
    std::vector<Mat> picked_irr;
    for (uint32_t i : sel_irr) picked_irr.push_back(i == 0 ? r : a);
    CHECK(testutil::invariant_subspaces(F, 2, picked_irr) == inv_irr);

    CHECK_THROWS_AS(greedy_subspace_subset(F, 5, {mat_identity(F, 5)}), cap_exceeded);
}

TEST_CASE("regular semisimple coset search") {
    GroupTable G = GroupTable::build("psl2:5");
    // an rss element with D = {identity} returns itself
    uint32_t x = 0;
    while (!G.is_regular_semisimple(x)) ++x;
    auto self = find_rss_in_coset(G, x, {G.identity()});
    REQUIRE(self.has_value());
    CHECK(*self == x);

    // D = the whole group: always found
    std::vector<uint32_t> all;
    for (uint32_t g = 0; g < G.order(); ++g) all.push_back(g);
    for (uint32_t probe = 0; probe < G.order(); probe += 11)
        CHECK(find_rss_in_coset(G, probe, all).has_value());

    // unipotent coset in sl2:5: every element has trace 2, none qualifies
    GroupTable S = GroupTable::build("sl2:5");
    const FieldCtx& F = S.field();
    std::vector<uint32_t> unip;
    for (uint64_t t = 0; t < 5; ++t) {
        Mat2 m{F.one(), F.from_int(t), F.zero(), F.one()};
        auto id = S.id_of_matrix(m);
        REQUIRE(id.has_value());
        unip.push_back(*id);
    }
    CHECK(!find_rss_in_coset(S, S.identity(), unip).has_value());

    CHECK_THROWS_AS(find_rss_in_coset(GroupTable::build("sym:3"), 0, {0}),
                    std::invalid_argument);
}
