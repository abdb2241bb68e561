#include "rissim/beamforming.hpp"

#include <cmath>
#include <numbers>

#include "rissim/errors.hpp"

namespace rissim {

SteeringVector optimal_theta(const SteeringVector& h, const SteeringVector& g_left) {
    if (h.u.size() != g_left.u.size() || h.v.size() != g_left.v.size())
        throw config_error("panel responses differ in shape");
    SteeringVector theta;
    theta.u.reserve(h.u.size());
    theta.v.reserve(h.v.size());
    for (std::size_t i = 0; i < h.u.size(); ++i) theta.u.push_back(std::conj(h.u[i] * g_left.u[i]));
    for (std::size_t j = 0; j < h.v.size(); ++j) theta.v.push_back(std::conj(h.v[j] * g_left.v[j]));
    return theta;
}

std::vector<cd> optimal_precoder(const SteeringVector& beta, double eta_w) {
    if (beta.size() != beta.u.size())
        throw config_error("precoder expects a plain ULA response");
    if (eta_w < 0.0) throw config_error("power must be non-negative");
    const double scale = std::sqrt(eta_w) / std::sqrt(static_cast<double>(beta.u.size()));
    std::vector<cd> w;
    w.reserve(beta.u.size());
    for (const cd& b : beta.u) w.push_back(scale * std::conj(b));
    return w;
}

double path_phase(double d_b2r_m, double d_r2u_m, double lambda_m) {
    if (!(d_b2r_m > 0.0) || !(d_r2u_m > 0.0))
        throw config_error("path phase needs positive distances");
    if (!(lambda_m > 0.0)) throw config_error("path phase needs a positive wavelength");
    const double cycles = (d_b2r_m + d_r2u_m) / lambda_m;
    const double frac = cycles - std::floor(cycles);
    return 2.0 * std::numbers::pi * frac;
}

double effective_gain(double loss_b2r, double loss_r2u, int antennas, int elements,
                      double eta_w) {
    if (antennas < 1 || elements < 1) throw config_error("array sizes must be positive");
    if (eta_w < 0.0) throw config_error("power must be non-negative");
    return loss_b2r * loss_r2u * static_cast<double>(elements) *
           std::sqrt(static_cast<double>(antennas)) * std::sqrt(eta_w);
}

double effective_gain(const Scenario& scenario, std::size_t k, double eta_w) {
    if (k >= scenario.riss.size()) throw config_error("panel index out of range");
    const double lambda = wavelength(scenario.rf.frequency_hz);
    const RissConfig& panel = scenario.riss[k];
    const double d1 = distance(scenario.bs.position, panel.position);
    const double d2 = distance(panel.position, scenario.user_position);
    if (d1 == 0.0 || d2 == 0.0)
        throw config_error("degenerate geometry: zero-length hop");
    return effective_gain(pathloss_b2r(d1, lambda), pathloss_b2r(d2, lambda),
                          scenario.bs.antennas, panel.elements(), eta_w);
}

PhaseConfig configure_riss(const Scenario& scenario, std::size_t k, double eta_w) {
    if (k >= scenario.riss.size()) throw config_error("panel index out of range");
    const auto channels = make_channels(scenario);
    const RissChannel& ch = channels[k];
    PhaseConfig cfg;
    cfg.theta = optimal_theta(ch.h, ch.g.left);
    cfg.path_phase_rad =
        path_phase(ch.d_b2r_m, ch.d_r2u_m, wavelength(scenario.rf.frequency_hz));
    cfg.precoder = optimal_precoder(ch.g.right, eta_w);
    cfg.eta_w = eta_w;
    return cfg;
}

} // namespace rissim
