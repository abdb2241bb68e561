#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rissim/errors.hpp"

namespace rissim {

inline constexpr double speed_of_light_mps = 299792458.0;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& v);
double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);
double distance(const Vec3& a, const Vec3& b);

// Base station: a half-wavelength ULA of `antennas` elements laid out along
// `array_axis` (unit vector).
struct BsConfig {
    int antennas = 0;
    Vec3 position;
    Vec3 array_axis;
};

// One sensing surface: an nx-by-ny half-wavelength UPA of passive elements
// spanned by the orthonormal in-plane axes `axis_u` and `axis_v`, plus
// `n_active` active elements (bookkeeping only; they do not enter the
// channel model).
struct RissConfig {
    int nx = 0;
    int ny = 0;
    int n_active = 0;
    Vec3 position;
    Vec3 axis_u;
    Vec3 axis_v;

    int elements() const { return nx * ny; }
};

// RF operating point. Powers are linear watts; the loader converts from the
// dB-valued file fields.
struct RfConfig {
    double frequency_hz = 0.0;
    double noise_power_w = 0.0;     // receiver noise floor, W
    double rcs_m2 = 0.0;            // target radar cross section
    double snr_threshold = 0.0;     // detection threshold, linear ratio
    double total_power_w = 0.0;     // transmit power budget

    // Element pitch as a fraction of the carrier wavelength. Fixed: the
    // steering phases below assume it.
    static constexpr double element_spacing_ratio = 0.5;
};

struct Scenario {
    BsConfig bs;
    std::vector<RissConfig> riss;
    Vec3 user_position;
    RfConfig rf;
};

double wavelength(double frequency_hz);
double dbm_to_watts(double dbm);
double db_to_linear(double db);

// Throws config_error naming the first offending field. The JSON loader
// runs the same checks with JSON-path names.
void validate(const Scenario& scenario);

// Direction cosine of `target` as seen from the BS array: the unit vector
// from bs.position to target projected onto the array axis. In [-1, 1].
double departure_sine(const BsConfig& bs, const Vec3& target);

// Direction cosines (u, v) of `target` along a panel's two in-plane axes.
// The corresponding steering phase steps are (pi*u, pi*v) at half-wavelength
// pitch.
std::pair<double, double> panel_direction_cosines(const RissConfig& riss, const Vec3& target);

// Parses and validates a scenario. Errors report the first violation by its
// JSON path ("riss[1].axis_u: ...").
Scenario load_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::string& path);

} // namespace rissim
