#pragma once

#include <span>
#include <vector>

#include "rissim/errors.hpp"

namespace rissim {

enum class AllocationMode {
    sensing,       // max-min detection SNR across panels
    communication, // max coherent sum amplitude at the user
};

struct PowerAllocation {
    AllocationMode mode{};
    std::vector<double> eta_w; // per-panel power, sums to the budget
    // sensing: the equalized rho^2*eta product; communication: the achieved
    // sum amplitude sum_k c_k*sqrt(eta_k).
    double objective = 0.0;
};

// Water-level-free closed form for the max-min problem: eta_i = t/rho_i^2
// with t = P / sum_j rho_j^-2, which equalizes rho_i^2*eta_i = t. All
// amplitudes must be positive.
PowerAllocation sensing_allocation(std::span<const double> loss_b2r, double total_power_w);

// Closed form for maximizing sum_k c_k*sqrt(eta_k) subject to the budget:
// eta_k = P*c_k^2/sum_j c_j^2, objective sqrt(P)*sqrt(sum c^2). Zero
// coefficients get zero power; at least one must be positive.
PowerAllocation communication_allocation(std::span<const double> coefficients,
                                         double total_power_w);

// Exhaustive search over the simplex {eta >= 0, sum eta = P} discretized in
// steps of `resolution_w`. Reference implementation for validating the
// closed forms; limited to 4 panels (infeasible_error beyond).
PowerAllocation oracle_grid_search(AllocationMode mode, std::span<const double> coefficients,
                                   double total_power_w, double resolution_w);

} // namespace rissim
