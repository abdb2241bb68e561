#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rissim/scene.hpp"

namespace rissim {

// Radius within which a target of the scenario's RCS is detectable through
// RISS k when it radiates with power eta_w and detection requires
// `snr_threshold` (linear): the fourth root of
// lambda^2 * rcs * rho_b2r^2 * eta * M * N^2 / (64 * pi^3 * Gamma * sigma0^2).
double detect_radius(const Scenario& scenario, std::size_t k, double eta_w,
                     double snr_threshold);

struct UnionEstimate {
    double volume_m3 = 0.0;
    double std_error_m3 = 0.0;
};

// Monte Carlo volume of the union of the balls |p - c_k| <= r_k cut to the
// half-space z <= z_plane, sampled uniformly over the tight bounding box.
// std_error = box_volume * sqrt(p*(1-p)/samples). Deterministic for a given
// (seed, samples) at any worker count.
UnionEstimate union_volume(std::span<const Vec3> centers, std::span<const double> radii,
                           double z_plane, std::uint64_t samples, std::uint64_t seed,
                           int threads = 1);

// sum_k (2/3)*pi*r_k^3, the no-overlap reference.
double sum_volume(std::span<const double> radii);

struct CoverageReport {
    std::vector<double> radii_m;
    double a_union_m3 = 0.0;
    double a_union_stderr_m3 = 0.0;
    double a_sum_m3 = 0.0;
};

// Detectable half-ball per RISS plus union/sum volumes for a whole
// deployment. Requires all panels at one elevation (that elevation is the
// cutting plane).
CoverageReport coverage(const Scenario& scenario, std::span<const double> eta_w,
                        double snr_threshold, std::uint64_t samples, std::uint64_t seed,
                        int threads = 1);

} // namespace rissim
