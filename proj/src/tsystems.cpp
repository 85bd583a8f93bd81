#include "pra/tsystems.hpp"

#include <algorithm>
#include <stdexcept>

namespace pra {

namespace {

uint32_t uf_find(std::vector<uint32_t>& parent, uint32_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

} // namespace

TSystemReport tsystems_from_census(const GroupTable& G, const ComponentCensus& census) {
    if (!census.extended)
        throw std::invalid_argument("T-system computation needs the extended census");
    const auto& auts = G.automorphism_group();

    uint32_t nc = census.count();
    std::vector<uint32_t> parent(nc);
    for (uint32_t c = 0; c < nc; ++c) parent[c] = c;

    // An automorphism maps components to components, so its action is
    // pinned down by where it sends one representative of each.
    for (uint32_t c = 0; c < nc; ++c) {
        auto ids = unpack_key(census.index.order, census.index.k, census.rep_keys[c]);
        std::vector<uint32_t> image(ids.size());
        for (const auto& sigma : auts) {
            for (size_t i = 0; i < ids.size(); ++i) image[i] = sigma[ids[i]];
            uint64_t ik = pack_key(census.index.order, image);
            uint32_t other = census.comp_of[ik];
            if (other == ~0u || !census.index.test(ik))
                throw std::logic_error("automorphism image left the vertex set");
            uint32_t a = uf_find(parent, c), b = uf_find(parent, other);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }

    TSystemReport rep;
    rep.k = census.index.k;
    rep.vertex_count = census.index.vertex_count;
    rep.component_count = nc;

    std::vector<int64_t> orbit_of(nc, -1);
    std::vector<TSystemOrbit> orbits;
    std::vector<uint64_t> orbit_rep_key;
    for (uint32_t c = 0; c < nc; ++c) {
        uint32_t r = uf_find(parent, c);
        if (orbit_of[r] < 0) {
            orbit_of[r] = (int64_t)orbits.size();
            orbits.push_back({});
            orbit_rep_key.push_back(census.rep_keys[c]);
            orbits.back().rep_ids = unpack_key(census.index.order, census.index.k, census.rep_keys[c]);
        }
        auto& orb = orbits[orbit_of[r]];
        orb.size += census.sizes[c];
        orb.component_count += 1;
    }
    rep.tsystem_count = orbits.size();

    std::vector<uint32_t> order_idx(orbits.size());
    for (uint32_t i = 0; i < orbits.size(); ++i) order_idx[i] = i;
    std::sort(order_idx.begin(), order_idx.end(), [&](uint32_t a, uint32_t b) {
        if (orbits[a].size != orbits[b].size) return orbits[a].size > orbits[b].size;
        return orbit_rep_key[a] < orbit_rep_key[b];
    });
    for (uint32_t i : order_idx) rep.orbits.push_back(std::move(orbits[i]));
    return rep;
}

TSystemReport tsystems(const GroupTable& G, uint32_t k) {
    return tsystems_from_census(G, components_census(G, k, true));
}

MapCheck check_component_tsystem_map(const GroupTable& G, uint32_t k) {
    ComponentCensus census = components_census(G, k, true);
    TSystemReport rep = tsystems_from_census(G, census);

    MapCheck chk;
    chk.k = k;
    chk.component_count = rep.component_count;
    chk.tsystem_count = rep.tsystem_count;
    chk.inequality_ok = rep.tsystem_count <= rep.component_count;
    chk.biconditional_applicable = k >= 2 * G.min_generators();
    chk.connected = rep.component_count <= 1;
    chk.single_tsystem = rep.tsystem_count <= 1;
    chk.consistent = chk.inequality_ok &&
                     (!chk.biconditional_applicable || (chk.connected == chk.single_tsystem));
    return chk;
}

} // namespace pra
