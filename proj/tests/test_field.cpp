#include "doctest.h"

#include <stdexcept>

#include "pra/field.hpp"

using namespace pra;

TEST_CASE("prime field basics") {
    FieldCtx F(5, 1);
    CHECK(F.q() == 5);
    CHECK(F.modulus() == std::vector<uint32_t>{0});
    CHECK(F.add(F.from_int(2), F.from_int(4)) == F.from_int(1));
    CHECK(F.inv(F.one()) == F.one());
    CHECK(F.mul(F.from_int(3), F.from_int(4)) == F.from_int(2));
    CHECK(F.neg(F.from_int(2)) == F.from_int(3));
    CHECK(F.sub(F.from_int(1), F.from_int(3)) == F.from_int(3));
}

TEST_CASE("modulus is the lexicographically smallest monic irreducible") {
    // Only monic irreducible quadratic over GF(2).
    FieldCtx F4(2, 2);
    CHECK(F4.modulus() == std::vector<uint32_t>{1, 1});

    // x^2 + 1 over GF(3): -1 is a non-square mod 3, and (c0, c1) = (1, 0)
    // sorts before every other irreducible candidate.
    FieldCtx F9(3, 2);
    CHECK(F9.modulus() == std::vector<uint32_t>{1, 0});
}

TEST_CASE("GF(4) multiplication reduces by the modulus") {
    FieldCtx F(2, 2);
    FieldElement x = F.element({0, 1});
    // x * x = x^2 = x + 1 after reduction by x^2 + x + 1
    CHECK(F.mul(x, x) == F.element({1, 1}));
}

TEST_CASE("integer encoding round trip") {
    for (auto [p, e] : {std::pair<uint64_t, uint32_t>{2, 1},
                        {2, 3},
                        {3, 2},
                        {5, 1},
                        {7, 2},
                        {11, 1}}) {
        FieldCtx F(p, e);
        for (uint64_t v = 0; v < F.q(); ++v) CHECK(F.to_int(F.from_int(v)) == v);
    }
}

TEST_CASE("field axioms and Frobenius, exhaustive for q <= 121") {
    for (auto [p, e] : {std::pair<uint64_t, uint32_t>{2, 1},
                        {2, 2},
                        {2, 3},
                        {2, 4},
                        {2, 5},
                        {2, 6},
                        {3, 1},
                        {3, 2},
                        {3, 4},
                        {5, 1},
                        {5, 2},
                        {7, 1},
                        {7, 2},
                        {11, 2},
                        {13, 1}}) {
        FieldCtx F(p, e);
        for (uint64_t va = 0; va < F.q(); ++va) {
            FieldElement a = F.from_int(va);
            // a^q = a
            CHECK(F.pow(a, F.q()) == a);
            if (!F.is_zero(a)) {
                // multiplicative inverse, and the group exponent divides q-1
                CHECK(F.mul(a, F.inv(a)) == F.one());
                CHECK(F.pow(a, F.q() - 1) == F.one());
            }
        }
        // commutativity / associativity / distributivity, sampled pairs
        for (uint64_t va = 0; va < F.q(); va += 3)
            for (uint64_t vb = 0; vb < F.q(); vb += 5) {
                FieldElement a = F.from_int(va), b = F.from_int(vb);
                CHECK(F.add(a, b) == F.add(b, a));
                CHECK(F.mul(a, b) == F.mul(b, a));
                FieldElement c = F.from_int((va * 7 + vb + 1) % F.q());
                CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            }
    }
}

TEST_CASE("freshman's dream in characteristic p") {
    FieldCtx F(3, 2);
    for (uint64_t va = 0; va < F.q(); ++va)
        for (uint64_t vb = 0; vb < F.q(); ++vb) {
            FieldElement a = F.from_int(va), b = F.from_int(vb);
            CHECK(F.pow(F.add(a, b), 3) == F.add(F.pow(a, 3), F.pow(b, 3)));
        }
}

TEST_CASE("element order is constant-coefficient-first lexicographic") {
    FieldCtx F(2, 2);
    // coefficient vectors sort (0,0) < (0,1) < (1,0) < (1,1); from_int is
    // little-endian, so that is encodings 0 < 2 < 1 < 3, not numeric order
    CHECK(F.less(F.from_int(0), F.from_int(2)));
    CHECK(F.less(F.from_int(2), F.from_int(1)));
    CHECK(F.less(F.from_int(1), F.from_int(3)));
    CHECK(!F.less(F.from_int(1), F.from_int(2)));
    CHECK(!F.less(F.from_int(3), F.from_int(3)));

    FieldCtx F9(3, 2);
    // element (1,2) = 1 + 2x sorts before (2,0) = 2
    CHECK(F9.less(F9.element({1, 2}), F9.element({2, 0})));
}

TEST_CASE("construction and input validation") {
    CHECK_THROWS_AS(FieldCtx(4, 1), std::invalid_argument); // 4 not prime
    CHECK_THROWS_AS(FieldCtx(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx(2, 21), cap_exceeded); // 2^21 > 2^20
    CHECK_NOTHROW(FieldCtx(2, 20));

    FieldCtx F(5, 1);
    CHECK_THROWS_AS(F.inv(F.zero()), std::invalid_argument);
    CHECK_THROWS_AS(F.from_int(5), std::invalid_argument);
    CHECK_THROWS_AS(F.element({5}), std::invalid_argument);
    CHECK_THROWS_AS(F.element({1, 2}), std::invalid_argument); // wrong length
}

TEST_CASE("pow handles large exponents and zero") {
    FieldCtx F(7, 2);
    FieldElement g = F.from_int(10);
    CHECK(F.pow(g, 0) == F.one());
    CHECK(F.pow(F.zero(), 0) == F.one());
    CHECK(F.pow(g, 48) == F.one());
    CHECK(F.pow(g, 49) == g);
    CHECK(F.pow(g, 1000000007ull) == F.pow(g, 1000000007ull % 48));
}
