#include "rissim/error_analysis.hpp"

#include <cmath>

#include "rissim/channel.hpp"
#include "rissim/parallel.hpp"
#include "rissim/rng.hpp"

namespace rissim {

namespace {

void check_panel_dims(int nx, int ny) {
    if (nx < 1 || ny < 1) throw config_error("panel dimensions must be positive");
}

void check_consistent(const GainProfile& gains, const ErrorModel& errors) {
    if (gains.zeta.empty()) throw config_error("at least one panel gain is required");
    if (errors.panels() != gains.zeta.size() || errors.sigma_h_v.size() != gains.zeta.size() ||
        errors.sigma_g_u.size() != gains.zeta.size() ||
        errors.sigma_g_v.size() != gains.zeta.size())
        throw config_error("error model and gain profile differ in panel count");
    for (double z : gains.zeta)
        if (!(z >= 0.0)) throw config_error("panel gains must be non-negative");
    for (const auto* v :
         {&errors.sigma_h_u, &errors.sigma_h_v, &errors.sigma_g_u, &errors.sigma_g_v})
        for (double s : *v)
            if (!(s >= 0.0)) throw config_error("error deviations must be non-negative");
}

// sum_{m=0}^{n-1} exp(-m^2 * var / 2)
double decay_single_sum(int n, double var) {
    double acc = 0.0;
    for (int m = 0; m < n; ++m) acc += std::exp(-0.5 * var * m * m);
    return acc;
}

// sum_{i,j=0}^{n-1} exp(-(i-j)^2 * var / 2)
double decay_double_sum(int n, double var) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += std::exp(-0.5 * var * (i - j) * (i - j));
    return acc;
}

// sum_{m=0}^{n-1} exp(i*m*xi), stable Dirichlet form with a direct-sum
// fallback where the denominator degenerates.
cd geometric_phase_sum(int n, double xi) {
    const double den = std::sin(0.5 * xi);
    if (std::abs(den) < 1e-9) {
        cd acc{0.0, 0.0};
        for (int m = 0; m < n; ++m) acc += std::polar(1.0, xi * m);
        return acc;
    }
    const double ratio = std::sin(0.5 * n * xi) / den;
    return std::polar(ratio, 0.5 * (n - 1) * xi);
}

} // namespace

ErrorModel ErrorModel::uniform(std::size_t panels, double sigma_rad) {
    if (panels == 0) throw config_error("error model needs at least one panel");
    if (!(sigma_rad >= 0.0)) throw config_error("error deviation must be non-negative");
    ErrorModel m;
    m.sigma_h_u.assign(panels, sigma_rad);
    m.sigma_h_v.assign(panels, sigma_rad);
    m.sigma_g_u.assign(panels, sigma_rad);
    m.sigma_g_v.assign(panels, sigma_rad);
    return m;
}

double ErrorModel::combined_var_u(std::size_t k) const {
    return sigma_h_u[k] * sigma_h_u[k] + sigma_g_u[k] * sigma_g_u[k];
}

double ErrorModel::combined_var_v(std::size_t k) const {
    return sigma_h_v[k] * sigma_h_v[k] + sigma_g_v[k] * sigma_g_v[k];
}

GainProfile make_gain_profile(const Scenario& scenario, std::span<const double> eta_w) {
    if (eta_w.size() != scenario.riss.size())
        throw config_error("one power per panel is required");
    const auto channels = make_channels(scenario);
    GainProfile profile;
    profile.zeta.reserve(channels.size());
    for (std::size_t k = 0; k < channels.size(); ++k) {
        if (eta_w[k] < 0.0) throw config_error("power must be non-negative");
        profile.zeta.push_back(channels[k].loss_b2r * channels[k].loss_r2u *
                               std::sqrt(static_cast<double>(scenario.bs.antennas)) *
                               std::sqrt(eta_w[k]));
    }
    return profile;
}

double expected_power_closed_form(const GainProfile& gains, const ErrorModel& errors,
                                  int nx, int ny) {
    check_panel_dims(nx, ny);
    check_consistent(gains, errors);
    const std::size_t k = gains.zeta.size();

    // Per-panel terms: E|D_nx D_ny|^2 factorizes per axis into double sums.
    double part1 = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        part1 += gains.zeta[i] * gains.zeta[i] * decay_double_sum(nx, errors.combined_var_u(i)) *
                 decay_double_sum(ny, errors.combined_var_v(i));

    // Cross terms: independent panels factorize into single sums.
    double part2 = 0.0;
    std::vector<double> su(k), sv(k);
    for (std::size_t i = 0; i < k; ++i) {
        su[i] = decay_single_sum(nx, errors.combined_var_u(i));
        sv[i] = decay_single_sum(ny, errors.combined_var_v(i));
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            part2 += 2.0 * gains.zeta[i] * gains.zeta[j] * su[i] * su[j] * sv[i] * sv[j];

    return part1 + part2;
}

cd sample_amplitude(const GainProfile& gains, std::span<const double> xi_u,
                    std::span<const double> xi_v, int nx, int ny) {
    check_panel_dims(nx, ny);
    if (xi_u.size() != gains.zeta.size() || xi_v.size() != gains.zeta.size())
        throw config_error("one error pair per panel is required");
    cd acc{0.0, 0.0};
    for (std::size_t k = 0; k < gains.zeta.size(); ++k)
        acc += gains.zeta[k] * geometric_phase_sum(nx, xi_u[k]) *
               geometric_phase_sum(ny, xi_v[k]);
    return acc;
}

McStats mc_statistics(const GainProfile& gains, const ErrorModel& errors, int nx, int ny,
                      double noise_power_w, std::uint64_t samples, std::uint64_t seed,
                      int threads) {
    check_panel_dims(nx, ny);
    check_consistent(gains, errors);
    if (samples == 0) throw config_error("sampling needs at least one sample");
    if (!(noise_power_w > 0.0)) throw config_error("noise power must be positive");

    const std::size_t k = gains.zeta.size();
    const double inv_log2 = 1.0 / std::log(2.0);

    struct Acc {
        double p = 0, p2 = 0, se = 0, se2 = 0;
    };

    auto chunk_stats = [&](std::uint64_t chunk, std::uint64_t, std::uint64_t count) {
        ChunkRng rng(seed, chunk);
        std::vector<double> xi_u(k), xi_v(k);
        Acc acc;
        for (std::uint64_t s = 0; s < count; ++s) {
            // Fixed draw order per panel: h-u, g-u, h-v, g-v. The standard
            // normals are scaled by the sigmas, so sweeps that vary only the
            // sigmas under one seed reuse the identical draws.
            for (std::size_t i = 0; i < k; ++i) {
                xi_u[i] = rng.normal() * errors.sigma_h_u[i] + rng.normal() * errors.sigma_g_u[i];
                xi_v[i] = rng.normal() * errors.sigma_h_v[i] + rng.normal() * errors.sigma_g_v[i];
            }
            const cd y = sample_amplitude(gains, xi_u, xi_v, nx, ny);
            const double power = std::norm(y);
            const double se = std::log1p(power / noise_power_w) * inv_log2;
            acc.p += power;
            acc.p2 += power * power;
            acc.se += se;
            acc.se2 += se * se;
        }
        return acc;
    };

    const auto chunks = for_each_chunk<Acc>(samples, chunk_samples, threads, chunk_stats);
    Acc total;
    for (const Acc& a : chunks) {
        total.p += a.p;
        total.p2 += a.p2;
        total.se += a.se;
        total.se2 += a.se2;
    }

    const double n = static_cast<double>(samples);
    auto finalize = [n](double sum, double sum_sq) {
        const double mean = sum / n;
        double var = 0.0;
        if (n > 1.0) var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
        return McEstimate{mean, std::sqrt(var / n)};
    };

    return {finalize(total.p, total.p2), finalize(total.se, total.se2), samples};
}

McEstimate expected_power_mc(const GainProfile& gains, const ErrorModel& errors, int nx,
                             int ny, std::uint64_t samples, std::uint64_t seed, int threads) {
    return mc_statistics(gains, errors, nx, ny, 1.0, samples, seed, threads).power_w;
}

double ese_upper_bound(double expected_power_w, double noise_power_w) {
    if (!(expected_power_w >= 0.0)) throw config_error("expected power must be non-negative");
    if (!(noise_power_w > 0.0)) throw config_error("noise power must be positive");
    return std::log1p(expected_power_w / noise_power_w) / std::log(2.0);
}

McEstimate ergodic_se_mc(const GainProfile& gains, const ErrorModel& errors, int nx, int ny,
                         double noise_power_w, std::uint64_t samples, std::uint64_t seed,
                         int threads) {
    return mc_statistics(gains, errors, nx, ny, noise_power_w, samples, seed, threads).se_bits;
}

} // namespace rissim
