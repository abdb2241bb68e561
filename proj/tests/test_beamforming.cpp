#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "rissim/beamforming.hpp"
#include "rissim/channel.hpp"
#include "rissim/placement.hpp"

using namespace rissim;
using doctest::Approx;
namespace nums = std::numbers;

namespace {

// Two-panel scenario with both panels on orthogonal grid slots.
Scenario grid_pair_scenario() {
    Scenario s = default_scenario();
    const PlacementGrid grid = orthogonal_grid(4, 50.0, 64);
    RissConfig second = s.riss[0];
    second.position = {grid.slots_m[1], 50.0, 15.0};
    s.riss.push_back(second);
    validate(s);
    return s;
}

} // namespace

TEST_CASE("optimal reflection phases") {
    SUBCASE("all-ones inputs give identity phases") {
        const auto ones = upa_steering(0, 0, 3, 2);
        const auto theta = optimal_theta(ones, ones);
        for (const cd& e : theta.dense()) CHECK(std::abs(e - cd{1, 0}) < 1e-14);
    }
    SUBCASE("co-phasing reaches N for random angles") {
        std::mt19937 gen(11);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int rep = 0; rep < 20; ++rep) {
            const auto h = upa_steering(uni(gen), uni(gen), 3, 4);
            const auto g = upa_steering(uni(gen), uni(gen), 3, 4);
            const auto theta = optimal_theta(h, g);
            for (const cd& e : theta.dense()) CHECK(std::abs(e) == Approx(1.0).epsilon(1e-12));

            const cd fast = diag_bilinear(h, theta, g);
            CHECK(std::abs(fast - cd{12, 0}) < 1e-10);

            // Dense oracle: sum_n h_n * theta_n * g_n over the full vectors.
            const auto hd = h.dense(), td = theta.dense(), gd = g.dense();
            cd slow = 0;
            for (std::size_t i = 0; i < hd.size(); ++i) slow += hd[i] * td[i] * gd[i];
            CHECK(std::abs(slow - cd{12, 0}) < 1e-10);
        }
    }
    SUBCASE("dimension mismatch rejected") {
        CHECK_THROWS_AS(optimal_theta(upa_steering(0, 0, 2, 2), upa_steering(0, 0, 2, 3)),
                        config_error);
    }
}

TEST_CASE("matched-filter precoder") {
    SUBCASE("beta^T w equals sqrt(eta*M)") {
        const auto beta = ula_steering(0.7, 64);
        const auto w = optimal_precoder(beta, 1.0);
        REQUIRE(w.size() == 64);
        const cd gain = dot_unconjugated(beta.u, w);
        CHECK(std::abs(gain - cd{8, 0}) < 1e-10);
    }
    SUBCASE("zero power gives the zero vector") {
        const auto w = optimal_precoder(ula_steering(0.3, 8), 0.0);
        for (const cd& e : w) CHECK(std::abs(e) == 0.0);
    }
    SUBCASE("norm and gain for random phases") {
        std::mt19937 gen(3);
        std::uniform_real_distribution<double> uni(-nums::pi, nums::pi);
        for (int rep = 0; rep < 10; ++rep) {
            const double eta = 0.25 * (rep + 1);
            const auto beta = ula_steering(uni(gen), 16);
            const auto w = optimal_precoder(beta, eta);
            double norm2 = 0;
            for (const cd& e : w) norm2 += std::norm(e);
            CHECK(norm2 == Approx(eta).epsilon(1e-12));
            const double gain2 = std::norm(dot_unconjugated(beta.u, w));
            CHECK(gain2 == Approx(eta * 16).epsilon(1e-10));
        }
    }
}

TEST_CASE("effective gain") {
    CHECK(effective_gain(1.0, 1.0, 64, 625, 0.0) == 0.0);
    CHECK(effective_gain(1.0, 1.0, 64, 625, 1.0) == Approx(5000.0).epsilon(1e-14));

    SUBCASE("matches the full factored evaluation on the default scenario") {
        const Scenario s = default_scenario();
        const auto channels = make_channels(s);
        const double eta = 2.5e-4;
        const PhaseConfig cfg = configure_riss(s, 0, eta);

        const cd panel = diag_bilinear(channels[0].h, cfg.theta, channels[0].g.left);
        const cd feed = dot_unconjugated(channels[0].g.right.u, cfg.precoder);
        const double full =
            std::abs(panel * feed) * channels[0].g.amplitude * channels[0].loss_r2u;
        CHECK(effective_gain(s, 0, eta) == Approx(full).epsilon(1e-10));
    }
}

TEST_CASE("path phase") {
    SUBCASE("whole wavelengths cancel") {
        CHECK(path_phase(0.75, 1.0, 0.25) == 0.0);
        CHECK(path_phase(2.0, 6.0, 0.5) == 0.0);
    }
    SUBCASE("always in [0, 2*pi)") {
        std::mt19937 gen(5);
        std::uniform_real_distribution<double> uni(0.1, 400.0);
        for (int rep = 0; rep < 50; ++rep) {
            const double p = path_phase(uni(gen), uni(gen), 0.085654988);
            CHECK(p >= 0.0);
            CHECK(p < 2 * nums::pi);
        }
    }
    SUBCASE("compensation makes multi-panel paths add coherently") {
        const Scenario s = grid_pair_scenario();
        const auto channels = make_channels(s);
        const double lambda = wavelength(s.rf.frequency_hz);
        cd net = 0;
        double direct = 0;
        for (std::size_t k = 0; k < channels.size(); ++k) {
            const double eta = 0.5e-3;
            const PhaseConfig cfg = configure_riss(s, k, eta);
            const double gain = effective_gain(s, k, eta);
            const double travelled = channels[k].d_b2r_m + channels[k].d_r2u_m;
            // Raw propagation phase minus the configured compensation should
            // be a whole number of turns.
            net += gain * std::polar(1.0, cfg.path_phase_rad - 2 * nums::pi * travelled / lambda);
            direct += gain;
        }
        CHECK(std::abs(net) == Approx(direct).epsilon(1e-10));
    }
}

TEST_CASE("closed form is optimal against quantized exhaustive search") {
    // 4 elements, 16-point phase alphabet: 65536 candidate phase vectors.
    std::mt19937 gen(17);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const int nx = 2, ny = 2, m = 4;
    const double eta = 1.0;

    for (int rep = 0; rep < 3; ++rep) {
        const auto h = upa_steering(uni(gen), uni(gen), nx, ny);
        const auto g_left = upa_steering(uni(gen), uni(gen), nx, ny);
        const auto beta = ula_steering(nums::pi * uni(gen), m);
        const auto w = optimal_precoder(beta, eta);
        const cd feed = dot_unconjugated(beta.u, w);

        const auto hd = h.dense(), gd = g_left.dense();
        std::vector<cd> z(4);
        for (int i = 0; i < 4; ++i) z[static_cast<std::size_t>(i)] = hd[static_cast<std::size_t>(i)] * gd[static_cast<std::size_t>(i)] * feed;

        double best = 0;
        for (int code = 0; code < 65536; ++code) {
            cd sum = 0;
            for (int i = 0; i < 4; ++i) {
                const int digit = (code >> (4 * i)) & 15;
                sum += z[static_cast<std::size_t>(i)] * std::polar(1.0, 2 * nums::pi * digit / 16.0);
            }
            best = std::max(best, std::abs(sum));
        }

        const double closed = nx * ny * std::sqrt(static_cast<double>(m)) * std::sqrt(eta);
        CHECK(best <= closed * (1 + 1e-12));
        CHECK(best >= closed * std::cos(nums::pi / 16.0));
    }
}

TEST_CASE("orthogonal placement eliminates cross-panel leakage") {
    const Scenario s = grid_pair_scenario();
    const auto channels = make_channels(s);
    const double eta = 1e-3;
    const PhaseConfig cfg0 = configure_riss(s, 0, eta);
    const PhaseConfig cfg1 = configure_riss(s, 1, eta);

    auto received = [&](std::size_t panel, const std::vector<cd>& w, const PhaseConfig& cfg) {
        const cd refl = diag_bilinear(channels[panel].h, cfg.theta, channels[panel].g.left);
        const cd feed = dot_unconjugated(channels[panel].g.right.u, w);
        return std::abs(refl * feed) * channels[panel].g.amplitude;
    };

    const double direct = received(0, cfg0.precoder, cfg0);
    const double cross = received(0, cfg1.precoder, cfg0);
    CHECK(direct > 0);
    CHECK(cross < 1e-9 * direct);
}

TEST_CASE("configure_riss bundles consistent pieces") {
    const Scenario s = default_scenario();
    const double eta = 1e-3;
    const PhaseConfig cfg = configure_riss(s, 0, eta);
    CHECK(cfg.eta_w == eta);
    CHECK(cfg.theta.size() == 625);
    for (const cd& e : cfg.theta.u) CHECK(std::abs(e) == Approx(1.0).epsilon(1e-12));
    for (const cd& e : cfg.theta.v) CHECK(std::abs(e) == Approx(1.0).epsilon(1e-12));
    double norm2 = 0;
    for (const cd& e : cfg.precoder) norm2 += std::norm(e);
    CHECK(norm2 == Approx(eta).epsilon(1e-12));
    const auto channels = make_channels(s);
    const double lambda = wavelength(s.rf.frequency_hz);
    CHECK(cfg.path_phase_rad ==
          Approx(path_phase(channels[0].d_b2r_m, channels[0].d_r2u_m, lambda)).epsilon(1e-14));
}
