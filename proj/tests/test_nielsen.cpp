#include "doctest.h"

#include <stdexcept>

#include "pra/nielsen.hpp"

using namespace pra;

namespace {

GenTuple tup(const GroupTable& G, std::initializer_list<const char*> els) {
    std::vector<uint32_t> ids;
    for (const char* s : els) ids.push_back(G.element_from_string(s));
    return pra::make_tuple(G, ids);
}

} // namespace

TEST_CASE("move set sizes") {
    CHECK(move_set(2, false).size() == 8);
    CHECK(move_set(2, true).size() == 11); // 8 + 1 swap + 2 inversions
    CHECK(move_set(3, true).size() == 30); // 24 + 3 + 3
    CHECK(move_set(3, false).size() == 24);
    CHECK(move_set(1, false).empty());
    CHECK(move_set(1, true).size() == 1); // only I_1
}

TEST_CASE("move application matches the definitions") {
    GroupTable G = GroupTable::build("sym:3");
    GenTuple t = tup(G, {"(1 2)", "(2 3)"});

    // right multiplication: coordinate 1 becomes (1 2)(2 3) = (1 3 2)
    GenTuple r = apply_move(G, t, {MoveKind::R, 0, 1, +1});
    CHECK(r.ids[0] == G.element_from_string("(1 3 2)"));
    CHECK(r.ids[1] == t.ids[1]);

    // left multiplication by the inverse
    GenTuple l = apply_move(G, t, {MoveKind::L, 0, 1, -1});
    CHECK(l.ids[0] == G.mul(G.inv(t.ids[1]), t.ids[0]));

    GenTuple p = apply_move(G, t, {MoveKind::P, 0, 1, +1});
    CHECK(p.ids[0] == t.ids[1]);
    CHECK(p.ids[1] == t.ids[0]);

    GenTuple i = apply_move(G, t, {MoveKind::I, 0, 0, +1});
    CHECK(i.ids[0] == G.inv(t.ids[0]));
    CHECK(i.ids[1] == t.ids[1]);

    // multiplying by an identity coordinate is a fixed point
    GenTuple e = make_tuple(G, {t.ids[0], G.identity()});
    CHECK(apply_move(G, e, {MoveKind::R, 0, 1, +1}).ids == e.ids);
}

TEST_CASE("move validation") {
    CHECK_THROWS_AS(validate_move(2, {MoveKind::R, 0, 0, +1}), std::invalid_argument); // i == j
    CHECK_THROWS_AS(validate_move(2, {MoveKind::R, 0, 2, +1}), std::invalid_argument); // j >= k
    CHECK_THROWS_AS(validate_move(2, {MoveKind::R, 0, 1, 0}), std::invalid_argument);  // bad sign
    CHECK_THROWS_AS(validate_move(2, {MoveKind::P, 1, 0, +1}), std::invalid_argument); // i > j
    CHECK_THROWS_AS(validate_move(2, {MoveKind::I, 0, 1, +1}), std::invalid_argument); // j != i
    CHECK_NOTHROW(validate_move(2, {MoveKind::I, 1, 1, +1}));
}

TEST_CASE("every move is invertible") {
    for (const char* spec : {"sym:3", "ab:5,5", "psl2:5"}) {
        GroupTable G = GroupTable::build(spec);
        for (uint32_t k : {2u, 3u}) {
            // an arbitrary generating-ish tuple; invertibility needs no generation
            std::vector<uint32_t> ids;
            for (uint32_t i = 0; i < k; ++i) ids.push_back((i * 7 + 1) % G.order());
            GenTuple t = pra::make_tuple(G, ids);
            for (const auto& m : move_set(k, true)) {
                GenTuple u = apply_move(G, t, m);
                CHECK(apply_move(G, u, inverse_move(m)).ids == t.ids);
            }
        }
    }
}

TEST_CASE("inverse move swaps the sign and fixes P and I") {
    NielsenMove r{MoveKind::R, 1, 0, +1};
    CHECK(inverse_move(r).sign == -1);
    CHECK(inverse_move(inverse_move(r)).sign == +1);
    NielsenMove p{MoveKind::P, 0, 1, +1};
    CHECK(inverse_move(p).kind == MoveKind::P);
    CHECK(inverse_move(p).i == 0);
    CHECK(inverse_move(p).j == 1);
    NielsenMove i3{MoveKind::I, 2, 2, +1};
    CHECK(inverse_move(i3).kind == MoveKind::I);
    CHECK(inverse_move(i3).i == 2);
}

TEST_CASE("moves preserve the generated subgroup") {
    for (const char* spec : {"sym:3", "alt:4", "ab:5,5"}) {
        GroupTable G = GroupTable::build(spec);
        GenTuple t = pra::make_tuple(G, G.min_generating_tuple());
        CHECK(is_vertex(G, t));
        for (const auto& m : move_set(t.k, true)) {
            GenTuple u = apply_move(G, t, m);
            CHECK(G.closure(u.ids) == G.closure(t.ids));
        }
    }
}

TEST_CASE("neighbor lists") {
    GroupTable G = GroupTable::build("sym:3");
    GenTuple t = tup(G, {"(1 2)", "(1 2 3)"});
    CHECK(neighbors(G, t, false).size() == 8);
    CHECK(neighbors(G, t, true).size() == 11);
    for (const auto& [m, u] : neighbors(G, t, true)) {
        CHECK(apply_move(G, t, m).ids == u.ids);
        CHECK(is_vertex(G, u));
    }
}

TEST_CASE("packed keys") {
    GroupTable G = GroupTable::build("sym:3");
    GenTuple t = tup(G, {"(1 2)", "(1 2 3)", "()"});
    CHECK(key_fits(G.order(), 3));
    CHECK(t.key == pack_key(G.order(), t.ids));
    CHECK(unpack_key(G.order(), 3, t.key) == t.ids);

    // keys sort tuples lexicographically by id sequence
    GenTuple a = make_tuple(G, {0, 0, 1});
    GenTuple b = make_tuple(G, {0, 1, 0});
    CHECK(a.key < b.key);

    // a group too large for 64-bit packing at this arity
    GroupTable big = GroupTable::build("ab:1000000");
    CHECK(!key_fits(big.order(), 4)); // 10^24 > 2^64
    GenTuple huge = make_tuple(big, {1, 2, 3, 4});
    CHECK(huge.key == no_key);
}

TEST_CASE("tuple literal parsing") {
    GroupTable S = GroupTable::build("sym:3");
    GenTuple t = parse_tuple(S, "(1 2), (1 2 3)");
    CHECK(t.k == 2);
    CHECK(t.ids[0] == S.element_from_string("(1 2)"));
    CHECK(tuple_string(S, t) == "(1 2),(1 2 3)");

    GroupTable M = GroupTable::build("psl2:5");
    GenTuple mt = parse_tuple(M, "[[0,1],[4,0]], [[0,1],[4,1]]");
    CHECK(mt.k == 2);
    CHECK(parse_tuple(M, tuple_string(M, mt)).ids == mt.ids);

    GroupTable A = GroupTable::build("ab:5,5");
    CHECK(parse_tuple(A, "(1,0),(0,1)").k == 2);

    CHECK_THROWS_AS(parse_tuple(S, "(1 2), (1 2"), std::invalid_argument);  // unbalanced
    CHECK_THROWS_AS(parse_tuple(S, ""), std::invalid_argument);
    CHECK_THROWS_AS(parse_tuple(S, "(1 9)"), std::invalid_argument);
}

TEST_CASE("word wire format round trips") {
    // P and I carry no sign; the parser stores 0 there, so the round trip
    // is exact only for words already in that form
    NielsenWord w{{MoveKind::R, 0, 1, +1},
                  {MoveKind::L, 2, 0, -1},
                  {MoveKind::P, 0, 2, 0},
                  {MoveKind::I, 1, 1, 0}};
    std::string s = word_to_string(w);
    CHECK(s == "R+ 1 2\nL- 3 1\nP 1 3\nI 2");
    NielsenWord back = word_from_string(s, 3);
    REQUIRE(back.size() == w.size());
    for (size_t i = 0; i < w.size(); ++i) {
        CHECK(back[i].kind == w[i].kind);
        CHECK(back[i].i == w[i].i);
        CHECK(back[i].j == w[i].j);
        CHECK(back[i].sign == w[i].sign);
    }

    // semicolons are interchangeable with newlines
    NielsenWord semi = word_from_string("R+ 1 2; P 1 3; I 2", 3);
    CHECK(semi.size() == 3);

    // P indices normalize to i < j
    NielsenWord p = word_from_string("P 3 1", 3);
    CHECK(p[0].i == 0);
    CHECK(p[0].j == 2);

    CHECK(word_from_string("", 3).empty());
    CHECK_THROWS_AS(word_from_string("R+ 1", 3), std::invalid_argument);
    CHECK_THROWS_AS(word_from_string("Q+ 1 2", 3), std::invalid_argument);
    CHECK_THROWS_AS(word_from_string("R+ 1 4", 3), std::invalid_argument);
    CHECK_THROWS_AS(word_from_string("I 1 2", 3), std::invalid_argument);
}

TEST_CASE("word application composes moves in order") {
    GroupTable G = GroupTable::build("sym:3");
    GenTuple t = tup(G, {"(1 2)", "(1 2 3)"});
    NielsenWord w = word_from_string("P 1 2\nI 1", 2);
    GenTuple r = apply_word(G, t, w);
    CHECK(r.ids[0] == G.inv(G.element_from_string("(1 2 3)")));
    CHECK(r.ids[1] == G.element_from_string("(1 2)"));
    CHECK(apply_word(G, t, {}).ids == t.ids);
}

TEST_CASE("make_tuple validates") {
    GroupTable G = GroupTable::build("sym:3");
    CHECK_THROWS_AS(make_tuple(G, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_tuple(G, {99}), std::invalid_argument);
    GenTuple t = make_tuple(G, {0, 1, 2, 3});
    CHECK(t.k == 4);
}
