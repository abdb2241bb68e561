#pragma once

#include <complex>
#include <span>
#include <vector>

#include "rissim/scene.hpp"

namespace rissim {

using cd = std::complex<double>;

// Array response kept in factored (Kronecker) form. The full vector is
// kron(u, v): entry (i, j) -> u[i] * v[j]. A plain ULA is stored as u with
// v = {1}. Entries have unit modulus and the first entry is 1.
struct SteeringVector {
    std::vector<cd> u;
    std::vector<cd> v;

    std::size_t size() const { return u.size() * v.size(); }
    std::vector<cd> dense() const;
};

// ULA response for a phase step of `phase` radians between neighbouring
// elements: entry m (0-based) is exp(i*m*phase).
SteeringVector ula_steering(double phase, int elements);

// UPA response for direction cosines (u, v) at half-wavelength pitch:
// kron(ula(pi*u, nx), ula(pi*v, ny)).
SteeringVector upa_steering(double u, double v, int nx, int ny);

// Free-space amplitude pathloss lambda/(4*pi*d). Covers both the BS->RISS
// and RISS->user hops.
double pathloss_b2r(double distance_m, double lambda_m);

// Target echo amplitude sqrt(rcs/(4*pi))/d for the user/target->RISS hop.
double pathloss_u2r(double distance_m, double rcs_m2);

// Unconjugated dot product sum_i a_i * b_i.
cd dot_unconjugated(std::span<const cd> a, std::span<const cd> b);

// a^T diag(phases) b evaluated without densifying:
// (sum_i a.u[i] phases.u[i] b.u[i]) * (sum_j a.v[j] phases.v[j] b.v[j]).
// All three factorizations must agree in shape.
cd diag_bilinear(const SteeringVector& a, const SteeringVector& phases, const SteeringVector& b);

// amplitude * left * right^T. Never densified in the hot paths; dense() is
// for oracles and small cases.
struct RankOneChannel {
    SteeringVector left;    // panel response at the RISS
    SteeringVector right;   // ULA response at the BS
    double amplitude = 0.0; // carries the BS->RISS pathloss
};

// Everything the link-level computations need about one RISS hop.
struct RissChannel {
    RankOneChannel g;      // BS -> RISS
    SteeringVector h;      // RISS -> user (pathloss kept separate)
    double d_b2r_m = 0.0;
    double d_r2u_m = 0.0;
    double loss_b2r = 0.0;
    double loss_r2u = 0.0;
};

// Builds the per-RISS channels for a validated scenario. Throws
// config_error on degenerate geometry (coincident endpoints).
std::vector<RissChannel> make_channels(const Scenario& scenario);

} // namespace rissim
