#include "doctest.h"

#include <stdexcept>

#include "pra/tsystems.hpp"

using namespace pra;

TEST_CASE("orbit counts on small groups, frozen values") {
    // cyclic of order 5 at k=1: inversion splits {1,4} from {2,3}, the
    // automorphism group fuses them back into one system of all 4 tuples
    TSystemReport r = tsystems(GroupTable::build("ab:5"), 1);
    CHECK(r.vertex_count == 4);
    CHECK(r.component_count == 2);
    CHECK(r.tsystem_count == 1);
    REQUIRE(r.orbits.size() == 1);
    CHECK(r.orbits[0].size == 4);
    CHECK(r.orbits[0].component_count == 2);

    // GL2(F5) fuses the two determinant-class components
    TSystemReport r2 = tsystems(GroupTable::build("ab:5,5"), 2);
    CHECK(r2.component_count == 2);
    CHECK(r2.tsystem_count == 1);
    CHECK(r2.orbits[0].size == 480);

    // S3 pairs: one component, one system
    TSystemReport r3 = tsystems(GroupTable::build("sym:3"), 2);
    CHECK(r3.component_count == 1);
    CHECK(r3.tsystem_count == 1);
}

TEST_CASE("psl2:5 triples form a single system") {
    TSystemReport r = tsystems(GroupTable::build("psl2:5"), 3);
    CHECK(r.component_count == 1);
    CHECK(r.tsystem_count == 1);
    CHECK(r.orbits[0].size == 200160);
}

TEST_CASE("orbit sizes partition the vertex set") {
    for (const char* spec : {"sym:3", "alt:4", "ab:2,4"}) {
        GroupTable G = GroupTable::build(spec);
        for (uint32_t k = 2; k <= 3; ++k) {
            TSystemReport r = tsystems(G, k);
            uint64_t total = 0;
            for (const auto& o : r.orbits) total += o.size;
            CHECK(total == r.vertex_count);
            CHECK(r.tsystem_count <= r.component_count);
            CHECK(r.tsystem_count >= 1);
        }
    }
}

TEST_CASE("automorphisms commute with moves") {
    for (const char* spec : {"sym:3", "ab:5,5", "alt:4"}) {
        GroupTable G = GroupTable::build(spec);
        const auto& auts = G.automorphism_group();
        GenTuple t = pra::make_tuple(G, G.min_generating_tuple());
        for (const auto& sigma : auts) {
            for (const auto& m : move_set(t.k, true)) {
                GenTuple moved = apply_move(G, t, m);
                std::vector<uint32_t> sigma_moved, sigma_t;
                for (uint32_t id : moved.ids) sigma_moved.push_back(sigma[id]);
                for (uint32_t id : t.ids) sigma_t.push_back(sigma[id]);
                GenTuple moved_sigma = apply_move(G, pra::make_tuple(G, sigma_t), m);
                CHECK(sigma_moved == moved_sigma.ids);
            }
        }
    }
}

TEST_CASE("component map verdicts") {
    // connected with one system at k >= 2d: consistent
    MapCheck c = check_component_tsystem_map(GroupTable::build("sym:3"), 4);
    CHECK(c.biconditional_applicable);
    CHECK(c.connected);
    CHECK(c.single_tsystem);
    CHECK(c.inequality_ok);
    CHECK(c.consistent);

    // 2 components, 1 system, k < 2d: no biconditional claim, still consistent
    MapCheck c2 = check_component_tsystem_map(GroupTable::build("ab:5,5"), 2);
    CHECK(!c2.biconditional_applicable);
    CHECK(!c2.connected);
    CHECK(c2.single_tsystem);
    CHECK(c2.inequality_ok);
    CHECK(c2.consistent);

    // trivial group: one vertex, one system
    MapCheck c3 = check_component_tsystem_map(GroupTable::build("ab:1"), 1);
    CHECK(c3.connected);
    CHECK(c3.single_tsystem);
    CHECK(c3.consistent);
}
