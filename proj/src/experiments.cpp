#include "rissim/experiments.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "rissim/allocation.hpp"
#include "rissim/channel.hpp"
#include "rissim/error_analysis.hpp"
#include "rissim/placement.hpp"
#include "rissim/rng.hpp"
#include "rissim/sensing_range.hpp"

namespace rissim {

namespace {

const char* kind_name(ExperimentSpec::Kind kind) {
    switch (kind) {
        case ExperimentSpec::Kind::fig3: return "fig3";
        case ExperimentSpec::Kind::fig4: return "fig4";
        case ExperimentSpec::Kind::fig5: return "fig5";
    }
    throw config_error("unknown experiment kind");
}

void require_kind(const ExperimentSpec& spec, ExperimentSpec::Kind kind) {
    if (spec.kind != kind)
        throw config_error(std::string("spec is not a ") + kind_name(kind) + " sweep");
}

// Communication coefficients c_k = rho_b2r * rho_r2u * N * sqrt(M) for the
// current user position.
std::vector<double> comm_coefficients(const Scenario& scenario,
                                      const std::vector<RissChannel>& channels) {
    std::vector<double> c;
    c.reserve(channels.size());
    const double root_m = std::sqrt(static_cast<double>(scenario.bs.antennas));
    for (std::size_t k = 0; k < channels.size(); ++k)
        c.push_back(channels[k].loss_b2r * channels[k].loss_r2u *
                    static_cast<double>(scenario.riss[k].elements()) * root_m);
    return c;
}

void append_list(std::string& out, const std::vector<int>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
}

void append_list(std::string& out, const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
}

std::string common_header(const ExperimentSpec& spec) {
    std::string h = "# riss-sim ";
    h += tool_version;
    h += ' ';
    h += kind_name(spec.kind);
    h += " scenario=" + scenario_fingerprint(spec.base);
    h += " seed=" + std::to_string(spec.seed);
    return h;
}

} // namespace

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string scenario_fingerprint(const Scenario& s) {
    std::string canon;
    char buf[32];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        canon += buf;
        canon += ';';
    };
    auto vec = [&](const Vec3& v) {
        num(v.x);
        num(v.y);
        num(v.z);
    };
    canon += "bs:" + std::to_string(s.bs.antennas) + ';';
    vec(s.bs.position);
    vec(s.bs.array_axis);
    for (const RissConfig& r : s.riss) {
        canon += "|riss:" + std::to_string(r.nx) + ';' + std::to_string(r.ny) + ';' +
                 std::to_string(r.n_active) + ';';
        vec(r.position);
        vec(r.axis_u);
        vec(r.axis_v);
    }
    canon += "|user:";
    vec(s.user_position);
    canon += "|rf:";
    num(s.rf.frequency_hz);
    num(s.rf.noise_power_w);
    num(s.rf.rcs_m2);
    num(s.rf.snr_threshold);
    num(s.rf.total_power_w);

    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : canon) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    std::string hex(16, '0');
    for (int i = 15; i >= 0; --i) {
        hex[static_cast<std::size_t>(i)] = "0123456789abcdef"[hash & 0xf];
        hash >>= 4;
    }
    return hex;
}

ExperimentSpec default_spec(ExperimentSpec::Kind kind, Scenario base) {
    validate(base);
    ExperimentSpec spec;
    spec.kind = kind;
    spec.grid_slots = std::max(1, base.bs.antennas / 2 - 1);
    spec.snr_threshold = base.rf.snr_threshold;
    spec.seed = 1;
    spec.threads = 0;

    switch (kind) {
        case ExperimentSpec::Kind::fig3: {
            // A lone panel needs no max-min equalization and dominates every
            // multi-panel deployment, so the sweep starts at two panels.
            const int top = std::min(31, spec.grid_slots);
            for (int n = 2; n <= top; ++n) spec.n_riss.push_back(n);
            if (spec.n_riss.empty()) spec.n_riss.push_back(1);
            spec.powers_w = {1e-4, 1e-3, 1e-2};
            spec.samples = 400000;
            break;
        }
        case ExperimentSpec::Kind::fig4: {
            spec.n_riss = {1, 2, 3, 4, 5};
            spec.mu_x_min_m = 0.0;
            spec.mu_x_max_m = 150.0;
            spec.mu_x_points = 151;
            break;
        }
        case ExperimentSpec::Kind::fig5: {
            spec.n_riss = {1, 2, 4};
            spec.sigma_max_rad = 0.05 * std::numbers::pi;
            spec.sigma_steps = 11;
            spec.samples = 1000000;
            base.user_position = {50.0, 10.0, 0.0};
            base.rf.total_power_w = 1e-3;
            break;
        }
    }
    spec.base = std::move(base);
    return spec;
}

void validate(const ExperimentSpec& spec) {
    validate(spec.base);
    if (spec.n_riss.empty()) throw config_error("spec.n_riss: must be non-empty");
    for (int n : spec.n_riss)
        if (n < 1) throw config_error("spec.n_riss: entries must be positive");
    if (spec.grid_slots < 1) throw config_error("spec.grid_slots: must be positive");
    switch (spec.kind) {
        case ExperimentSpec::Kind::fig3:
            if (spec.powers_w.empty()) throw config_error("spec.powers_w: must be non-empty");
            for (double p : spec.powers_w)
                if (!(p > 0.0)) throw config_error("spec.powers_w: entries must be positive");
            if (!(spec.snr_threshold > 0.0))
                throw config_error("spec.snr_threshold: must be positive");
            if (spec.samples == 0) throw config_error("spec.samples: must be positive");
            break;
        case ExperimentSpec::Kind::fig4:
            if (spec.mu_x_points < 2) throw config_error("spec.mu_x_points: need at least 2");
            if (!(spec.mu_x_max_m > spec.mu_x_min_m))
                throw config_error("spec.mu_x_max_m: must exceed spec.mu_x_min_m");
            break;
        case ExperimentSpec::Kind::fig5:
            if (spec.sigma_steps < 2) throw config_error("spec.sigma_steps: need at least 2");
            if (!(spec.sigma_max_rad > 0.0))
                throw config_error("spec.sigma_max_rad: must be positive");
            if (spec.samples == 0) throw config_error("spec.samples: must be positive");
            break;
    }
}

Scenario deploy(const Scenario& base, int n_riss, int grid_slots) {
    validate(base);
    const Vec3 axis = base.bs.array_axis;
    if (std::abs(axis.x - 1.0) > 1e-9 || std::abs(axis.y) > 1e-9 || std::abs(axis.z) > 1e-9)
        throw config_error("deployment requires the BS array axis along +x");

    const RissConfig& proto = base.riss.front();
    const Vec3 offset = proto.position - base.bs.position;
    const double rr = std::hypot(offset.y, offset.z);
    if (!(rr > 0.0))
        throw config_error("deployment needs the prototype panel laterally offset from the BS");

    const PlacementGrid grid = orthogonal_grid(grid_slots, rr, base.bs.antennas);
    const std::vector<int> chosen = quantize_uniform(n_riss, grid);

    Scenario out = base;
    out.riss.clear();
    out.riss.reserve(chosen.size());
    for (int slot : chosen) {
        RissConfig panel = proto;
        panel.position = base.bs.position +
                         Vec3{grid.slots_m[static_cast<std::size_t>(slot)], offset.y, offset.z};
        out.riss.push_back(panel);
    }
    return out;
}

std::vector<CoverageRow> run_fig3(const ExperimentSpec& spec) {
    require_kind(spec, ExperimentSpec::Kind::fig3);
    validate(spec);

    std::vector<CoverageRow> rows;
    rows.reserve(spec.powers_w.size() * spec.n_riss.size());
    for (std::size_t pi = 0; pi < spec.powers_w.size(); ++pi) {
        const double power = spec.powers_w[pi];
        for (int n : spec.n_riss) {
            const Scenario scn = deploy(spec.base, n, spec.grid_slots);
            const auto channels = make_channels(scn);
            std::vector<double> losses;
            losses.reserve(channels.size());
            for (const RissChannel& ch : channels) losses.push_back(ch.loss_b2r);
            const PowerAllocation alloc = sensing_allocation(losses, power);
            const CoverageReport report =
                coverage(scn, alloc.eta_w, spec.snr_threshold, spec.samples,
                         mix_seed(spec.seed, pi, static_cast<std::uint64_t>(n)), spec.threads);
            rows.push_back({n, power, report.a_union_m3, report.a_union_stderr_m3,
                            report.a_sum_m3});
        }
    }
    return rows;
}

std::vector<SePositionRow> run_fig4(const ExperimentSpec& spec) {
    require_kind(spec, ExperimentSpec::Kind::fig4);
    validate(spec);

    const double lambda = wavelength(spec.base.rf.frequency_hz);
    const double power = spec.base.rf.total_power_w;
    const double noise = spec.base.rf.noise_power_w;

    std::vector<SePositionRow> rows;
    rows.reserve(spec.n_riss.size() * static_cast<std::size_t>(spec.mu_x_points));
    for (int n : spec.n_riss) {
        const Scenario scn = deploy(spec.base, n, spec.grid_slots);
        const auto channels = make_channels(scn);
        const double root_m = std::sqrt(static_cast<double>(scn.bs.antennas));

        for (int i = 0; i < spec.mu_x_points; ++i) {
            const double x = spec.mu_x_min_m + (spec.mu_x_max_m - spec.mu_x_min_m) * i /
                                                   (spec.mu_x_points - 1);
            const Vec3 user{x, spec.base.user_position.y, spec.base.user_position.z};
            std::vector<double> c;
            c.reserve(channels.size());
            for (std::size_t k = 0; k < channels.size(); ++k) {
                const double d = distance(scn.riss[k].position, user);
                if (d == 0.0)
                    throw config_error("degenerate geometry: user path crosses a panel");
                c.push_back(channels[k].loss_b2r * pathloss_b2r(d, lambda) *
                            static_cast<double>(scn.riss[k].elements()) * root_m);
            }
            const PowerAllocation alloc = communication_allocation(c, power);
            const double se =
                std::log1p(alloc.objective * alloc.objective / noise) / std::log(2.0);
            rows.push_back({n, x, se});
        }
    }
    return rows;
}

std::vector<SeErrorRow> run_fig5(const ExperimentSpec& spec) {
    require_kind(spec, ExperimentSpec::Kind::fig5);
    validate(spec);

    const double noise = spec.base.rf.noise_power_w;
    std::vector<SeErrorRow> rows;
    rows.reserve(spec.n_riss.size() * static_cast<std::size_t>(spec.sigma_steps));
    for (int n : spec.n_riss) {
        const Scenario scn = deploy(spec.base, n, spec.grid_slots);
        const auto channels = make_channels(scn);
        const std::vector<double> c = comm_coefficients(scn, channels);
        const PowerAllocation alloc = communication_allocation(c, spec.base.rf.total_power_w);
        const GainProfile gains = make_gain_profile(scn, alloc.eta_w);
        const int nx = scn.riss.front().nx;
        const int ny = scn.riss.front().ny;
        // One seed per deployment size: the sigma sweep reuses the identical
        // standard normals, so rows of one curve are paired.
        const std::uint64_t curve_seed = mix_seed(spec.seed, static_cast<std::uint64_t>(n));

        for (int s = 0; s < spec.sigma_steps; ++s) {
            const double sigma = spec.sigma_max_rad * s / (spec.sigma_steps - 1);
            const ErrorModel errors = ErrorModel::uniform(static_cast<std::size_t>(n), sigma);
            const double closed = expected_power_closed_form(gains, errors, nx, ny);
            const McStats stats = mc_statistics(gains, errors, nx, ny, noise, spec.samples,
                                                curve_seed, spec.threads);
            rows.push_back({n, sigma, closed, stats.power_w.value, stats.power_w.std_error,
                            ese_upper_bound(closed, noise), stats.se_bits.value,
                            stats.se_bits.std_error});
        }
    }
    return rows;
}

void write_csv(std::ostream& out, const ExperimentSpec& spec,
               std::span<const CoverageRow> rows) {
    require_kind(spec, ExperimentSpec::Kind::fig3);
    std::string h = common_header(spec);
    h += " samples=" + std::to_string(spec.samples);
    h += " grid_slots=" + std::to_string(spec.grid_slots);
    h += " snr_threshold=" + format_double(spec.snr_threshold);
    h += " powers_w=";
    append_list(h, spec.powers_w);
    h += " n_riss=";
    append_list(h, spec.n_riss);
    out << h << '\n';
    out << "# budgets and detection threshold are tool defaults unless overridden\n";
    out << "n_riss,power_w,a_union_m3,a_sum_m3,a_union_stderr_m3\n";
    for (const CoverageRow& r : rows)
        out << r.n_riss << ',' << format_double(r.power_w) << ','
            << format_double(r.a_union_m3) << ',' << format_double(r.a_sum_m3) << ','
            << format_double(r.a_union_stderr_m3) << '\n';
}

void write_csv(std::ostream& out, const ExperimentSpec& spec,
               std::span<const SePositionRow> rows) {
    require_kind(spec, ExperimentSpec::Kind::fig4);
    std::string h = common_header(spec);
    h += " grid_slots=" + std::to_string(spec.grid_slots);
    h += " power_w=" + format_double(spec.base.rf.total_power_w);
    h += " mu_y=" + format_double(spec.base.user_position.y);
    h += " mu_z=" + format_double(spec.base.user_position.z);
    h += " x=[" + format_double(spec.mu_x_min_m) + "," + format_double(spec.mu_x_max_m) +
         "]/" + std::to_string(spec.mu_x_points);
    h += " n_riss=";
    append_list(h, spec.n_riss);
    out << h << '\n';
    out << "n_riss,x_m,se_bits\n";
    for (const SePositionRow& r : rows)
        out << r.n_riss << ',' << format_double(r.x_m) << ',' << format_double(r.se_bits)
            << '\n';
}

void write_csv(std::ostream& out, const ExperimentSpec& spec,
               std::span<const SeErrorRow> rows) {
    require_kind(spec, ExperimentSpec::Kind::fig5);
    std::string h = common_header(spec);
    h += " samples=" + std::to_string(spec.samples);
    h += " grid_slots=" + std::to_string(spec.grid_slots);
    h += " power_w=" + format_double(spec.base.rf.total_power_w);
    h += " user=(" + format_double(spec.base.user_position.x) + "," +
         format_double(spec.base.user_position.y) + "," +
         format_double(spec.base.user_position.z) + ")";
    h += " sigma_max=" + format_double(spec.sigma_max_rad);
    h += " steps=" + std::to_string(spec.sigma_steps);
    h += " n_riss=";
    append_list(h, spec.n_riss);
    out << h << '\n';
    out << "n_riss,sigma_rad,e_closed_w,e_mc_w,ese_bound_bits,ese_mc_bits,e_mc_stderr_w,"
           "ese_mc_stderr_bits\n";
    for (const SeErrorRow& r : rows)
        out << r.n_riss << ',' << format_double(r.sigma_rad) << ','
            << format_double(r.e_closed_w) << ',' << format_double(r.e_mc_w) << ','
            << format_double(r.ese_bound_bits) << ',' << format_double(r.ese_mc_bits) << ','
            << format_double(r.e_mc_stderr_w) << ',' << format_double(r.ese_mc_stderr_bits)
            << '\n';
}

} // namespace rissim
