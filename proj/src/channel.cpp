#include "rissim/channel.hpp"

#include <cmath>
#include <numbers>

#include "rissim/errors.hpp"

namespace rissim {

namespace {

std::vector<cd> phase_ramp(double phase, int elements) {
    if (elements < 1) throw config_error("steering vector needs at least one element");
    std::vector<cd> out(static_cast<std::size_t>(elements));
    for (int m = 0; m < elements; ++m)
        out[static_cast<std::size_t>(m)] = std::polar(1.0, phase * m);
    return out;
}

} // namespace

std::vector<cd> SteeringVector::dense() const {
    std::vector<cd> out;
    out.reserve(size());
    for (const cd& a : u)
        for (const cd& b : v) out.push_back(a * b);
    return out;
}

SteeringVector ula_steering(double phase, int elements) {
    return {phase_ramp(phase, elements), {cd{1.0, 0.0}}};
}

SteeringVector upa_steering(double u, double v, int nx, int ny) {
    constexpr double pi = std::numbers::pi;
    return {phase_ramp(pi * u, nx), phase_ramp(pi * v, ny)};
}

double pathloss_b2r(double distance_m, double lambda_m) {
    if (!(distance_m > 0.0)) throw config_error("pathloss needs a positive distance");
    if (!(lambda_m > 0.0)) throw config_error("pathloss needs a positive wavelength");
    return lambda_m / (4.0 * std::numbers::pi * distance_m);
}

double pathloss_u2r(double distance_m, double rcs_m2) {
    if (!(distance_m > 0.0)) throw config_error("pathloss needs a positive distance");
    if (!(rcs_m2 > 0.0)) throw config_error("pathloss needs a positive cross section");
    return std::sqrt(rcs_m2 / (4.0 * std::numbers::pi)) / distance_m;
}

cd dot_unconjugated(std::span<const cd> a, std::span<const cd> b) {
    if (a.size() != b.size()) throw config_error("dot product arguments differ in length");
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

cd diag_bilinear(const SteeringVector& a, const SteeringVector& phases, const SteeringVector& b) {
    if (a.u.size() != phases.u.size() || a.u.size() != b.u.size() ||
        a.v.size() != phases.v.size() || a.v.size() != b.v.size())
        throw config_error("bilinear form arguments differ in shape");
    cd fu{0.0, 0.0};
    for (std::size_t i = 0; i < a.u.size(); ++i) fu += a.u[i] * phases.u[i] * b.u[i];
    cd fv{0.0, 0.0};
    for (std::size_t j = 0; j < a.v.size(); ++j) fv += a.v[j] * phases.v[j] * b.v[j];
    return fu * fv;
}

std::vector<RissChannel> make_channels(const Scenario& scenario) {
    validate(scenario);
    const double lambda = wavelength(scenario.rf.frequency_hz);

    std::vector<RissChannel> out;
    out.reserve(scenario.riss.size());
    for (const RissConfig& panel : scenario.riss) {
        RissChannel ch;
        ch.d_b2r_m = distance(scenario.bs.position, panel.position);
        ch.d_r2u_m = distance(panel.position, scenario.user_position);
        if (ch.d_b2r_m == 0.0)
            throw config_error("degenerate geometry: panel coincides with the BS");
        if (ch.d_r2u_m == 0.0)
            throw config_error("degenerate geometry: panel coincides with the user");
        ch.loss_b2r = pathloss_b2r(ch.d_b2r_m, lambda);
        ch.loss_r2u = pathloss_b2r(ch.d_r2u_m, lambda);

        // Arrival at the panel from the BS, departure from the BS array.
        auto [gu, gv] = panel_direction_cosines(panel, scenario.bs.position);
        ch.g.left = upa_steering(gu, gv, panel.nx, panel.ny);
        ch.g.right = ula_steering(std::numbers::pi * departure_sine(scenario.bs, panel.position),
                                  scenario.bs.antennas);
        ch.g.amplitude = ch.loss_b2r;

        auto [hu, hv] = panel_direction_cosines(panel, scenario.user_position);
        ch.h = upa_steering(hu, hv, panel.nx, panel.ny);

        out.push_back(std::move(ch));
    }
    return out;
}

} // namespace rissim
