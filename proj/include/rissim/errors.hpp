#pragma once

#include <stdexcept>

namespace rissim {

// Contract violations in inputs: malformed scenario values, mismatched
// dimensions, degenerate geometry (coincident points, zero axes).
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A request that cannot be realized even with valid inputs: more panels
// than grid slots, an oracle asked to search beyond its exhaustive limit.
struct infeasible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rissim
