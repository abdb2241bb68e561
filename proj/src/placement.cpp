#include "rissim/placement.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>

namespace rissim {

PlacementGrid orthogonal_grid(int count, double rr_m, int antennas) {
    if (count < 1) throw config_error("grid needs at least one slot");
    if (!(rr_m > 0.0)) throw config_error("grid needs a positive BS offset");
    if (antennas < 2) throw config_error("grid needs at least two antennas");
    if (2 * count > antennas)
        throw infeasible_error("orthogonal grid of " + std::to_string(count) +
                               " slots needs at least " + std::to_string(2 * count) +
                               " antennas");
    PlacementGrid grid{rr_m, antennas, {}};
    grid.slots_m.reserve(static_cast<std::size_t>(count));
    const double m2 = static_cast<double>(antennas) * antennas;
    for (int l = 0; l < count; ++l)
        grid.slots_m.push_back(2.0 * l * rr_m / std::sqrt(m2 - 4.0 * static_cast<double>(l) * l));
    return grid;
}

std::vector<int> quantize_uniform(int n, const PlacementGrid& grid) {
    const int slots = static_cast<int>(grid.slots_m.size());
    if (n < 1) throw config_error("deployment needs at least one panel");
    if (n > slots)
        throw infeasible_error("cannot place " + std::to_string(n) + " panels on " +
                               std::to_string(slots) + " slots");

    std::vector<bool> used(grid.slots_m.size(), false);
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(n));
    const double x_max = grid.slots_m.back();
    for (int j = 0; j < n; ++j) {
        const double target = n == 1 ? 0.0 : x_max * j / (n - 1);
        int best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (int i = 0; i < slots; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            const double d = std::abs(grid.slots_m[static_cast<std::size_t>(i)] - target);
            if (d < best_dist) {
                best_dist = d;
                best = i;
            }
        }
        used[static_cast<std::size_t>(best)] = true;
        chosen.push_back(best);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

std::complex<double> leakage(double sine_a, double sine_b, int antennas) {
    if (antennas < 1) throw config_error("leakage needs at least one antenna");
    const double step = std::numbers::pi * (sine_a - sine_b);
    std::complex<double> acc{0.0, 0.0};
    for (int m = 0; m < antennas; ++m) acc += std::polar(1.0, step * m);
    return acc;
}

} // namespace rissim
