#pragma once

#include <cstdint>
#include <vector>

#include "pra/graph.hpp"

namespace pra {

// ---------------------------------------------------------------------------
// Orbits of the automorphism group on the components of the extended
// tuple graph.  Components are already closed under the moves, so acting
// on one representative per component is enough to recover the orbits.
// ---------------------------------------------------------------------------

struct TSystemOrbit {
    uint64_t size = 0;                  // total tuples across the orbit
    uint64_t component_count = 0;       // components fused into this orbit
    std::vector<uint32_t> rep_ids;      // representative tuple
};

struct TSystemReport {
    uint32_t k = 0;
    uint64_t vertex_count = 0;
    uint64_t component_count = 0;
    uint64_t tsystem_count = 0;
    std::vector<TSystemOrbit> orbits; // size descending, then representative key
};

TSystemReport tsystems(const GroupTable& G, uint32_t k);

// Same computation in the presence of an existing census (saves the
// dominant enumeration when both are needed).
TSystemReport tsystems_from_census(const GroupTable& G, const ComponentCensus& census);

struct MapCheck {
    uint32_t k = 0;
    uint64_t component_count = 0;
    uint64_t tsystem_count = 0;
    bool inequality_ok = false;            // tsystems <= components
    bool biconditional_applicable = false; // k >= 2 d(G)
    bool connected = false;
    bool single_tsystem = false;
    bool consistent = false; // applicable implies (connected <=> single)
};

MapCheck check_component_tsystem_map(const GroupTable& G, uint32_t k);

} // namespace pra
