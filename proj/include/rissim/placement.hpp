#pragma once

#include <complex>
#include <vector>

#include "rissim/errors.hpp"

namespace rissim {

// Lateral offsets (metres) at which panels sit in mutually orthogonal beam
// directions of an M-antenna BS at perpendicular distance rr. Slot l has
// departure sine exactly 2l/M.
struct PlacementGrid {
    double rr_m = 0.0;
    int antennas = 0;
    std::vector<double> slots_m; // strictly increasing, slots_m[0] == 0
};

// Slots l = 0..count-1 with x_l = 2*l*rr / sqrt(M^2 - 4*l^2). Requires
// 1 <= count and 2*count <= antennas (infeasible_error otherwise).
PlacementGrid orthogonal_grid(int count, double rr_m, int antennas);

// Spreads n targets evenly over [0, slots.back()], snaps each to its
// nearest slot; when two targets want the same slot the later one moves to
// the nearest unused slot (ties toward the lower index). Returns sorted,
// duplicate-free slot indices. n == 1 selects slot 0.
std::vector<int> quantize_uniform(int n, const PlacementGrid& grid);

// Inter-beam interference sum_{m=0}^{M-1} exp(i*pi*m*(sine_a - sine_b)).
// Equals M when the sines coincide and vanishes when they differ by a
// multiple of 2/M.
std::complex<double> leakage(double sine_a, double sine_b, int antennas);

} // namespace rissim
