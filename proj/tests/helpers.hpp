#pragma once

#include <exception>
#include <string>

#include "rissim/scene.hpp"

// Scenario shipped with the repo; the fixture for most integration-level
// tests. Loaded fresh per call so tests may mutate their copy.
inline rissim::Scenario default_scenario() {
    return rissim::load_scenario_file(std::string(RISSIM_DATA_DIR) + "/default_scenario.json");
}

template <typename Fn>
bool throws_with(Fn&& fn, const char* needle) {
    try {
        fn();
    } catch (const std::exception& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}
