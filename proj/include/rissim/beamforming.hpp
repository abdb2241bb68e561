#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "rissim/channel.hpp"
#include "rissim/scene.hpp"

namespace rissim {

// One RISS's configured operating point: reflection phases, the propagation
// phase they pre-compensate, and the BS precoder feeding the panel.
struct PhaseConfig {
    SteeringVector theta;      // diagonal reflection coefficients, |entry| = 1
    double path_phase_rad = 0; // 2*pi*(d_b2r + d_r2u)/lambda, mod 2*pi
    std::vector<cd> precoder;  // length M, squared norm = eta_w
    double eta_w = 0.0;
};

// Reflection phases that align the panel: conj(h ∘ g_left), kept factored.
// h and g_left must share panel dimensions.
SteeringVector optimal_theta(const SteeringVector& h, const SteeringVector& g_left);

// Matched-filter precoder sqrt(eta) * conj(beta)/||beta||.
std::vector<cd> optimal_precoder(const SteeringVector& beta, double eta_w);

double path_phase(double d_b2r_m, double d_r2u_m, double lambda_m);

// |rho_b2r * rho_r2u * h^T Theta G w| under the optimal configuration:
// loss_b2r * loss_r2u * N * sqrt(M) * sqrt(eta).
double effective_gain(double loss_b2r, double loss_r2u, int antennas, int elements,
                      double eta_w);
double effective_gain(const Scenario& scenario, std::size_t k, double eta_w);

// Bundles the closed forms for RISS k of a validated scenario.
PhaseConfig configure_riss(const Scenario& scenario, std::size_t k, double eta_w);

} // namespace rissim
