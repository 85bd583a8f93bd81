#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pra {

// Thrown when an input is structurally valid but exceeds one of the
// documented size caps (field order, group order, tuple-space size, ...).
// The CLI maps this to its own exit code so scripts can tell "too big"
// apart from "malformed" and from "negative verdict".
struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a bounded randomized search gives up (e.g. no generating
// start tuple within the attempt budget).  Distinct from cap_exceeded:
// the input was fine, the search just came up empty.
struct search_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pra
