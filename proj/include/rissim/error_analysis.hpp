#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rissim/channel.hpp"

namespace rissim {

// Gaussian direction-estimation errors, one std-dev per hop, axis, and
// panel (radians). The u/v axis errors of the incoming and outgoing hops
// add on each axis, so the effective per-axis variances are the pairwise
// sums below.
struct ErrorModel {
    std::vector<double> sigma_h_u, sigma_h_v; // panel->user hop
    std::vector<double> sigma_g_u, sigma_g_v; // BS->panel hop

    static ErrorModel uniform(std::size_t panels, double sigma_rad);

    std::size_t panels() const { return sigma_h_u.size(); }
    double combined_var_u(std::size_t k) const;
    double combined_var_v(std::size_t k) const;
};

// zeta_k = loss_b2r * loss_r2u * sqrt(M) * sqrt(eta_k): the per-panel,
// per-element amplitude reaching the user when phases are aligned.
struct GainProfile {
    std::vector<double> zeta;
};

GainProfile make_gain_profile(const Scenario& scenario, std::span<const double> eta_w);

// E|y|^2 under the error model, evaluated in closed form: a per-panel part
// with one double sum per axis, exp(-(i-j)^2 * var/2), plus cross terms of
// single sums exp(-n^2 * var/2). Exact for the rank-1 per-axis error model
// the sampler below draws from.
double expected_power_closed_form(const GainProfile& gains, const ErrorModel& errors,
                                  int nx, int ny);

// Received amplitude for one realization of the per-axis phase-slope errors:
// y = sum_k zeta_k * (sum_{m<nx} e^{i*m*xi_u_k}) * (sum_{m<ny} e^{i*m*xi_v_k}).
cd sample_amplitude(const GainProfile& gains, std::span<const double> xi_u,
                    std::span<const double> xi_v, int nx, int ny);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

// Mean received power and mean spectral efficiency over one shared draw
// stream: per sample and panel the four axis errors are drawn in a fixed
// order, so estimates for the same (seed, samples) pair are comparable
// point by point. Deterministic at any worker count.
struct McStats {
    McEstimate power_w;
    McEstimate se_bits;
    std::uint64_t samples = 0;
};

McStats mc_statistics(const GainProfile& gains, const ErrorModel& errors, int nx, int ny,
                      double noise_power_w, std::uint64_t samples, std::uint64_t seed,
                      int threads = 1);

McEstimate expected_power_mc(const GainProfile& gains, const ErrorModel& errors, int nx,
                             int ny, std::uint64_t samples, std::uint64_t seed,
                             int threads = 1);

// Jensen bound log2(1 + E|y|^2 / sigma0^2) on the ergodic SE.
double ese_upper_bound(double expected_power_w, double noise_power_w);

McEstimate ergodic_se_mc(const GainProfile& gains, const ErrorModel& errors, int nx, int ny,
                         double noise_power_w, std::uint64_t samples, std::uint64_t seed,
                         int threads = 1);

} // namespace rissim
