#include "rissim/sensing_range.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rissim/channel.hpp"
#include "rissim/parallel.hpp"
#include "rissim/rng.hpp"

namespace rissim {

double detect_radius(const Scenario& scenario, std::size_t k, double eta_w,
                     double snr_threshold) {
    if (k >= scenario.riss.size()) throw config_error("panel index out of range");
    if (eta_w < 0.0) throw config_error("power must be non-negative");
    if (!(snr_threshold > 0.0)) throw config_error("detection threshold must be positive");

    const RissConfig& panel = scenario.riss[k];
    const double lambda = wavelength(scenario.rf.frequency_hz);
    const double d = distance(scenario.bs.position, panel.position);
    if (d == 0.0) throw config_error("degenerate geometry: panel coincides with the BS");
    const double rho = pathloss_b2r(d, lambda);
    const double n = static_cast<double>(panel.elements());

    const double numerator = lambda * lambda * scenario.rf.rcs_m2 * rho * rho * eta_w *
                             static_cast<double>(scenario.bs.antennas) * n * n;
    const double denominator = 64.0 * std::pow(std::numbers::pi, 3) * snr_threshold *
                               scenario.rf.noise_power_w;
    return std::pow(numerator / denominator, 0.25);
}

UnionEstimate union_volume(std::span<const Vec3> centers, std::span<const double> radii,
                           double z_plane, std::uint64_t samples, std::uint64_t seed,
                           int threads) {
    if (centers.size() != radii.size())
        throw config_error("one radius per center is required");
    if (samples == 0) throw config_error("sampling needs at least one sample");
    for (double r : radii)
        if (!(r >= 0.0)) throw config_error("radii must be non-negative");

    // Tight bounding box of the cut balls; zero-radius balls are empty and
    // contribute no extent.
    double lo[3], hi[3];
    bool any = false;
    for (std::size_t k = 0; k < centers.size(); ++k) {
        if (radii[k] == 0.0) continue;
        const double c[3] = {centers[k].x, centers[k].y, centers[k].z};
        for (int a = 0; a < 3; ++a) {
            const double l = c[a] - radii[k], h = c[a] + radii[k];
            if (!any || l < lo[a]) lo[a] = l;
            if (!any || h > hi[a]) hi[a] = h;
        }
        any = true;
    }
    if (!any) return {0.0, 0.0};
    hi[2] = std::min(hi[2], z_plane);
    if (hi[2] <= lo[2]) return {0.0, 0.0};

    const double box = (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);

    auto hits_in_chunk = [&](std::uint64_t chunk, std::uint64_t, std::uint64_t count) {
        ChunkRng rng(seed, chunk);
        std::uint64_t hits = 0;
        for (std::uint64_t s = 0; s < count; ++s) {
            const double x = lo[0] + rng.uniform() * (hi[0] - lo[0]);
            const double y = lo[1] + rng.uniform() * (hi[1] - lo[1]);
            const double z = lo[2] + rng.uniform() * (hi[2] - lo[2]);
            for (std::size_t k = 0; k < centers.size(); ++k) {
                const double dx = x - centers[k].x;
                const double dy = y - centers[k].y;
                const double dz = z - centers[k].z;
                if (dx * dx + dy * dy + dz * dz <= radii[k] * radii[k]) {
                    ++hits;
                    break;
                }
            }
        }
        return hits;
    };

    const auto chunk_hits =
        for_each_chunk<std::uint64_t>(samples, chunk_samples, threads, hits_in_chunk);
    std::uint64_t hits = 0;
    for (std::uint64_t h : chunk_hits) hits += h;

    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {box * p, box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

double sum_volume(std::span<const double> radii) {
    double acc = 0.0;
    for (double r : radii) {
        if (!(r >= 0.0)) throw config_error("radii must be non-negative");
        acc += (2.0 / 3.0) * std::numbers::pi * r * r * r;
    }
    return acc;
}

CoverageReport coverage(const Scenario& scenario, std::span<const double> eta_w,
                        double snr_threshold, std::uint64_t samples, std::uint64_t seed,
                        int threads) {
    validate(scenario);
    if (eta_w.size() != scenario.riss.size())
        throw config_error("one power per panel is required");
    const double z_plane = scenario.riss.front().position.z;
    for (const RissConfig& panel : scenario.riss)
        if (panel.position.z != z_plane)
            throw config_error("coverage needs all panels at one elevation");

    CoverageReport report;
    std::vector<Vec3> centers;
    centers.reserve(scenario.riss.size());
    for (std::size_t k = 0; k < scenario.riss.size(); ++k) {
        report.radii_m.push_back(detect_radius(scenario, k, eta_w[k], snr_threshold));
        centers.push_back(scenario.riss[k].position);
    }
    const UnionEstimate u =
        union_volume(centers, report.radii_m, z_plane, samples, seed, threads);
    report.a_union_m3 = u.volume_m3;
    report.a_union_stderr_m3 = u.std_error_m3;
    report.a_sum_m3 = sum_volume(report.radii_m);
    return report;
}

} // namespace rissim
