#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rissim/scene.hpp"

namespace rissim {

inline constexpr const char* tool_version = "0.1.0";

// A reproducible sweep. Rows are a deterministic function of (spec, seed);
// Monte Carlo columns additionally of `samples`, never of `threads`.
struct ExperimentSpec {
    // Named after the shipped figure commands: fig3 = coverage vs panel
    // count, fig4 = SE vs user position, fig5 = SE vs error level.
    enum class Kind { fig3, fig4, fig5 };

    Kind kind{};
    Scenario base;              // panel prototype = base.riss[0]
    std::vector<int> n_riss;    // deployment sizes to sweep
    std::vector<double> powers_w;                    // coverage sweep budgets
    double mu_x_min_m = 0.0, mu_x_max_m = 0.0;       // user path along x
    int mu_x_points = 0;
    double sigma_max_rad = 0.0;                      // error sweep extent
    int sigma_steps = 0;
    double snr_threshold = 0.0; // detection threshold (linear)
    int grid_slots = 0;         // orthogonal grid size L
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    int threads = 1;
};

// Defaults for each sweep kind on top of `base`. The error sweep pins the
// user at (50, 10, 0) with a 1 mW budget; the coverage sweep uses panel
// counts 2..31 and budgets {0.1, 1, 10} mW (the budgets and threshold are
// tool defaults, not calibrated values).
ExperimentSpec default_spec(ExperimentSpec::Kind kind, Scenario base);

void validate(const ExperimentSpec& spec);

// Replaces base.riss with n copies of the prototype panel placed on the
// orthogonal grid (uniform-then-quantize). Requires the BS array axis along
// +x and the prototype panel at the BS elevation-offset line; the grid's rr
// is the prototype's perpendicular offset from the BS.
Scenario deploy(const Scenario& base, int n_riss, int grid_slots);

struct CoverageRow {
    int n_riss = 0;
    double power_w = 0.0;
    double a_union_m3 = 0.0;
    double a_union_stderr_m3 = 0.0;
    double a_sum_m3 = 0.0;
};

struct SePositionRow {
    int n_riss = 0;
    double x_m = 0.0;
    double se_bits = 0.0;
};

struct SeErrorRow {
    int n_riss = 0;
    double sigma_rad = 0.0;
    double e_closed_w = 0.0;
    double e_mc_w = 0.0;
    double e_mc_stderr_w = 0.0;
    double ese_bound_bits = 0.0;
    double ese_mc_bits = 0.0;
    double ese_mc_stderr_bits = 0.0;
};

// Detectable-volume union/sum across deployment sizes and budgets, max-min
// power split, panels placed per deploy().
std::vector<CoverageRow> run_fig3(const ExperimentSpec& spec);

// Spectral efficiency along the user path, optimal communication split per
// point. Closed form, no sampling.
std::vector<SePositionRow> run_fig4(const ExperimentSpec& spec);

// Received energy and SE against the error level, all four sigmas equal;
// closed form next to Monte Carlo on shared draws (the standard normals are
// reused across sigma values, so rows of one deployment are paired).
std::vector<SeErrorRow> run_fig5(const ExperimentSpec& spec);

// CSV with a provenance header (tool version, scenario fingerprint, seed,
// sweep parameters). Byte-identical for equal (spec, seed) at any thread
// count.
void write_csv(std::ostream& out, const ExperimentSpec& spec,
               std::span<const CoverageRow> rows);
void write_csv(std::ostream& out, const ExperimentSpec& spec,
               std::span<const SePositionRow> rows);
void write_csv(std::ostream& out, const ExperimentSpec& spec,
               std::span<const SeErrorRow> rows);

// FNV-1a over a canonical serialization; stable across platforms.
std::string scenario_fingerprint(const Scenario& scenario);

// Shortest round-trip decimal form; all CSV numbers go through this.
std::string format_double(double value);

} // namespace rissim
