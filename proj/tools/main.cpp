// riss-sim: sensing/communication link simulator CLI. Subcommands print CSV
// to stdout or --out; exit 0 on success, 2 on invalid configuration, 3 when
// a placement or search is infeasible.
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>

#include "CLI11.hpp"

#include "rissim/allocation.hpp"
#include "rissim/channel.hpp"
#include "rissim/error_analysis.hpp"
#include "rissim/experiments.hpp"
#include "rissim/placement.hpp"
#include "rissim/sensing_range.hpp"

namespace {

using namespace rissim;

// --seed wins over RISS_SIM_SEED wins over 1. The resolved value lands in
// the CSV header either way.
std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t cli_seed) {
    if (seed_opt != nullptr && seed_opt->count() > 0) return cli_seed;
    if (const char* env = std::getenv("RISS_SIM_SEED")) {
        std::uint64_t value = 0;
        const char* end = env + std::string_view(env).size();
        const auto res = std::from_chars(env, end, value);
        if (res.ec != std::errc{} || res.ptr != end)
            throw config_error("RISS_SIM_SEED: not an unsigned integer");
        return value;
    }
    return 1;
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file: " + path);
    fn(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

// c_k = rho_b2r * rho_r2u * N * sqrt(M) per panel, the coherent-sum weight
// of the communication scheme.
std::vector<double> comm_coefficients(const Scenario& scn,
                                      const std::vector<RissChannel>& channels) {
    std::vector<double> c;
    c.reserve(channels.size());
    const double root_m = std::sqrt(static_cast<double>(scn.bs.antennas));
    for (std::size_t k = 0; k < channels.size(); ++k)
        c.push_back(channels[k].loss_b2r * channels[k].loss_r2u *
                    static_cast<double>(scn.riss[k].elements()) * root_m);
    return c;
}

struct PlaceArgs {
    int n = 0;
    double rr = 0.0;
    int antennas = 0;
    int slots = 0; // 0 = antennas/2 - 1
    std::string out;
};

void run_place(const PlaceArgs& a) {
    const int slots = a.slots > 0 ? a.slots : a.antennas / 2 - 1;
    const PlacementGrid grid = orthogonal_grid(slots, a.rr, a.antennas);
    const std::vector<int> chosen = quantize_uniform(a.n, grid);
    with_output(a.out, [&](std::ostream& os) {
        os << "# riss-sim " << tool_version << " place n=" << a.n << " rr=" << format_double(a.rr)
           << " antennas=" << a.antennas << " slots=" << slots << '\n';
        os << "slot_index,x_m,sine\n";
        for (int l : chosen) {
            const double sine = 2.0 * l / a.antennas;
            os << l << ',' << format_double(grid.slots_m[static_cast<std::size_t>(l)]) << ','
               << format_double(sine) << '\n';
        }
    });
}

struct AllocateArgs {
    std::string mode;
    std::string scenario;
    std::string out;
};

void run_allocate(const AllocateArgs& a) {
    const Scenario scn = load_scenario_file(a.scenario);
    const auto channels = make_channels(scn);
    PowerAllocation alloc;
    if (a.mode == "sensing") {
        std::vector<double> losses;
        losses.reserve(channels.size());
        for (const RissChannel& ch : channels) losses.push_back(ch.loss_b2r);
        alloc = sensing_allocation(losses, scn.rf.total_power_w);
    } else if (a.mode == "comm") {
        alloc = communication_allocation(comm_coefficients(scn, channels), scn.rf.total_power_w);
    } else {
        throw config_error("--mode: expected sensing or comm");
    }
    with_output(a.out, [&](std::ostream& os) {
        os << "# riss-sim " << tool_version << " allocate mode=" << a.mode
           << " scenario=" << scenario_fingerprint(scn)
           << " power_w=" << format_double(scn.rf.total_power_w)
           << " objective=" << format_double(alloc.objective) << '\n';
        os << "riss_index,eta_w,share\n";
        for (std::size_t k = 0; k < alloc.eta_w.size(); ++k)
            os << k << ',' << format_double(alloc.eta_w[k]) << ','
               << format_double(alloc.eta_w[k] / scn.rf.total_power_w) << '\n';
    });
}

struct SenseRangeArgs {
    std::string scenario;
    double gamma_db = 0.0;
    bool gamma_set = false;
    std::uint64_t samples = 400000;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out;
};

void run_sense_range(const SenseRangeArgs& a) {
    const Scenario scn = load_scenario_file(a.scenario);
    const double threshold = a.gamma_set ? db_to_linear(a.gamma_db) : scn.rf.snr_threshold;
    const auto channels = make_channels(scn);
    std::vector<double> losses;
    losses.reserve(channels.size());
    for (const RissChannel& ch : channels) losses.push_back(ch.loss_b2r);
    const PowerAllocation alloc = sensing_allocation(losses, scn.rf.total_power_w);
    const CoverageReport report =
        coverage(scn, alloc.eta_w, threshold, a.samples, a.seed, a.threads);
    with_output(a.out, [&](std::ostream& os) {
        os << "# riss-sim " << tool_version << " sense-range scenario=" << scenario_fingerprint(scn)
           << " snr_threshold=" << format_double(threshold) << " samples=" << a.samples
           << " seed=" << a.seed << '\n';
        os << "riss_index,radius_m\n";
        for (std::size_t k = 0; k < report.radii_m.size(); ++k)
            os << k << ',' << format_double(report.radii_m[k]) << '\n';
        os << "a_union_m3,a_sum_m3,a_union_stderr_m3\n";
        os << format_double(report.a_union_m3) << ',' << format_double(report.a_sum_m3) << ','
           << format_double(report.a_union_stderr_m3) << '\n';
    });
}

struct ErrorSweepArgs {
    std::string scenario;
    double sigma_max = 0.05 * std::numbers::pi;
    int steps = 11;
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out;
};

// Error sweep over the scenario's own panels (no redeployment): optimal
// communication split, then closed form next to Monte Carlo per sigma. One
// seed for the whole sweep keeps the rows paired.
void run_error_sweep(const ErrorSweepArgs& a) {
    const Scenario scn = load_scenario_file(a.scenario);
    if (a.steps < 2) throw config_error("--steps: need at least 2");
    if (!(a.sigma_max > 0.0)) throw config_error("--sigma-max: must be positive");
    if (a.samples == 0) throw config_error("--samples: must be positive");
    const int nx = scn.riss.front().nx;
    const int ny = scn.riss.front().ny;
    for (const RissConfig& r : scn.riss)
        if (r.nx != nx || r.ny != ny)
            throw config_error("error sweep needs identical panel dimensions");

    const auto channels = make_channels(scn);
    const PowerAllocation alloc =
        communication_allocation(comm_coefficients(scn, channels), scn.rf.total_power_w);
    const GainProfile gains = make_gain_profile(scn, alloc.eta_w);
    const double noise = scn.rf.noise_power_w;

    with_output(a.out, [&](std::ostream& os) {
        os << "# riss-sim " << tool_version << " error-sweep scenario=" << scenario_fingerprint(scn)
           << " sigma_max=" << format_double(a.sigma_max) << " steps=" << a.steps
           << " samples=" << a.samples << " seed=" << a.seed << '\n';
        os << "sigma_rad,e_closed_w,e_mc_w,e_mc_stderr_w,ese_bound_bits,ese_mc_bits,"
              "ese_mc_stderr_bits\n";
        for (int s = 0; s < a.steps; ++s) {
            const double sigma = a.sigma_max * s / (a.steps - 1);
            const ErrorModel errors = ErrorModel::uniform(scn.riss.size(), sigma);
            const double closed = expected_power_closed_form(gains, errors, nx, ny);
            const McStats stats =
                mc_statistics(gains, errors, nx, ny, noise, a.samples, a.seed, a.threads);
            os << format_double(sigma) << ',' << format_double(closed) << ','
               << format_double(stats.power_w.value) << ','
               << format_double(stats.power_w.std_error) << ','
               << format_double(ese_upper_bound(closed, noise)) << ','
               << format_double(stats.se_bits.value) << ','
               << format_double(stats.se_bits.std_error) << '\n';
        }
    });
}

struct FigArgs {
    std::string scenario;
    std::string out;
    std::uint64_t seed = 1;
    std::uint64_t samples = 0; // 0 = kind default
    int threads = 0;
    double gamma_db = 0.0;
    bool gamma_set = false;
    double sigma_max = 0.0; // fig5 only, 0 = default
    int steps = 0;          // fig5 only, 0 = default
};

ExperimentSpec build_spec(ExperimentSpec::Kind kind, const FigArgs& a) {
    ExperimentSpec spec = default_spec(kind, load_scenario_file(a.scenario));
    spec.seed = a.seed;
    spec.threads = a.threads;
    if (a.samples > 0) spec.samples = a.samples;
    if (a.gamma_set) spec.snr_threshold = db_to_linear(a.gamma_db);
    if (a.sigma_max > 0.0) spec.sigma_max_rad = a.sigma_max;
    if (a.steps > 0) spec.sigma_steps = a.steps;
    return spec;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-RISS sensing and communication link simulator"};
    app.set_version_flag("--version", rissim::tool_version);
    app.require_subcommand(1);

    PlaceArgs place;
    auto* place_cmd = app.add_subcommand("place", "Orthogonal placement grid positions");
    place_cmd->add_option("--n", place.n, "Panels to place")->required();
    place_cmd->add_option("--rr", place.rr, "Perpendicular offset from the BS, m")->required();
    place_cmd->add_option("--antennas", place.antennas, "BS antenna count")->required();
    place_cmd->add_option("--slots", place.slots, "Grid size L (default antennas/2-1)");
    place_cmd->add_option("--out", place.out, "Output CSV path (default stdout)");

    AllocateArgs allocate;
    auto* alloc_cmd = app.add_subcommand("allocate", "Power split across panels");
    alloc_cmd->add_option("--mode", allocate.mode, "sensing|comm")->required();
    alloc_cmd->add_option("--scenario", allocate.scenario, "Scenario JSON")->required();
    alloc_cmd->add_option("--out", allocate.out, "Output CSV path (default stdout)");

    SenseRangeArgs sense;
    CLI::Option* sense_seed = nullptr;
    auto* sense_cmd = app.add_subcommand("sense-range", "Detectable radii and coverage volumes");
    sense_cmd->add_option("--scenario", sense.scenario, "Scenario JSON")->required();
    sense_cmd->add_option("--gamma-db", sense.gamma_db, "Detection SNR threshold, dB")
        ->each([&](const std::string&) { sense.gamma_set = true; });
    sense_cmd->add_option("--samples", sense.samples, "Monte Carlo samples");
    sense_seed = sense_cmd->add_option("--seed", sense.seed, "RNG seed");
    sense_cmd->add_option("--threads", sense.threads, "Worker threads (0 = auto)");
    sense_cmd->add_option("--out", sense.out, "Output CSV path (default stdout)");

    ErrorSweepArgs esweep;
    CLI::Option* esweep_seed = nullptr;
    auto* esweep_cmd = app.add_subcommand("error-sweep", "Received energy and SE vs error level");
    esweep_cmd->add_option("--scenario", esweep.scenario, "Scenario JSON")->required();
    esweep_cmd->add_option("--sigma-max", esweep.sigma_max, "Largest error std-dev, rad");
    esweep_cmd->add_option("--steps", esweep.steps, "Sweep points");
    esweep_cmd->add_option("--samples", esweep.samples, "Monte Carlo samples");
    esweep_seed = esweep_cmd->add_option("--seed", esweep.seed, "RNG seed");
    esweep_cmd->add_option("--threads", esweep.threads, "Worker threads (0 = auto)");
    esweep_cmd->add_option("--out", esweep.out, "Output CSV path (default stdout)");

    FigArgs fig3, fig4, fig5;
    CLI::Option* fig3_seed = nullptr;
    CLI::Option* fig5_seed = nullptr;

    auto* fig3_cmd = app.add_subcommand("fig3", "Coverage volume vs panel count and budget");
    fig3_cmd->add_option("--scenario", fig3.scenario, "Scenario JSON")->required();
    fig3_cmd->add_option("--out", fig3.out, "Output CSV path (default stdout)");
    fig3_seed = fig3_cmd->add_option("--seed", fig3.seed, "RNG seed");
    fig3_cmd->add_option("--samples", fig3.samples, "Monte Carlo samples per volume");
    fig3_cmd->add_option("--threads", fig3.threads, "Worker threads (0 = auto)");
    fig3_cmd->add_option("--gamma-db", fig3.gamma_db, "Detection SNR threshold, dB")
        ->each([&](const std::string&) { fig3.gamma_set = true; });

    auto* fig4_cmd = app.add_subcommand("fig4", "Spectral efficiency vs user position");
    fig4_cmd->add_option("--scenario", fig4.scenario, "Scenario JSON")->required();
    fig4_cmd->add_option("--out", fig4.out, "Output CSV path (default stdout)");

    auto* fig5_cmd = app.add_subcommand("fig5", "Spectral efficiency vs sensing error");
    fig5_cmd->add_option("--scenario", fig5.scenario, "Scenario JSON")->required();
    fig5_cmd->add_option("--out", fig5.out, "Output CSV path (default stdout)");
    fig5_seed = fig5_cmd->add_option("--seed", fig5.seed, "RNG seed");
    fig5_cmd->add_option("--samples", fig5.samples, "Monte Carlo samples per point");
    fig5_cmd->add_option("--threads", fig5.threads, "Worker threads (0 = auto)");
    fig5_cmd->add_option("--sigma-max", fig5.sigma_max, "Largest error std-dev, rad");
    fig5_cmd->add_option("--steps", fig5.steps, "Sweep points");

    place_cmd->callback([&] { run_place(place); });
    alloc_cmd->callback([&] { run_allocate(allocate); });
    sense_cmd->callback([&] {
        sense.seed = resolve_seed(sense_seed, sense.seed);
        run_sense_range(sense);
    });
    esweep_cmd->callback([&] {
        esweep.seed = resolve_seed(esweep_seed, esweep.seed);
        run_error_sweep(esweep);
    });
    fig3_cmd->callback([&] {
        fig3.seed = resolve_seed(fig3_seed, fig3.seed);
        const ExperimentSpec spec = build_spec(ExperimentSpec::Kind::fig3, fig3);
        const auto rows = run_fig3(spec);
        with_output(fig3.out, [&](std::ostream& os) { write_csv(os, spec, rows); });
    });
    fig4_cmd->callback([&] {
        const ExperimentSpec spec = build_spec(ExperimentSpec::Kind::fig4, fig4);
        const auto rows = run_fig4(spec);
        with_output(fig4.out, [&](std::ostream& os) { write_csv(os, spec, rows); });
    });
    fig5_cmd->callback([&] {
        fig5.seed = resolve_seed(fig5_seed, fig5.seed);
        const ExperimentSpec spec = build_spec(ExperimentSpec::Kind::fig5, fig5);
        const auto rows = run_fig5(spec);
        with_output(fig5.out, [&](std::ostream& os) { write_csv(os, spec, rows); });
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const rissim::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const rissim::infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
