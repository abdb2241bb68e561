#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "rissim/beamforming.hpp"
#include "rissim/error_analysis.hpp"

using namespace rissim;
using doctest::Approx;
namespace nums = std::numbers;

namespace {

// Brute-force reference for the sampled amplitude.
cd brute_amplitude(const GainProfile& gains, const std::vector<double>& xi_u,
                   const std::vector<double>& xi_v, int nx, int ny) {
    cd acc{0, 0};
    for (std::size_t k = 0; k < gains.zeta.size(); ++k) {
        cd du{0, 0}, dv{0, 0};
        for (int m = 0; m < nx; ++m) du += std::polar(1.0, m * xi_u[k]);
        for (int m = 0; m < ny; ++m) dv += std::polar(1.0, m * xi_v[k]);
        acc += gains.zeta[k] * du * dv;
    }
    return acc;
}

} // namespace

TEST_CASE("error model bookkeeping") {
    const ErrorModel m = ErrorModel::uniform(3, 0.1);
    CHECK(m.panels() == 3);
    CHECK(m.combined_var_u(0) == Approx(0.02).epsilon(1e-14));
    CHECK(m.combined_var_v(2) == Approx(0.02).epsilon(1e-14));
    CHECK_THROWS_AS(ErrorModel::uniform(0, 0.1), config_error);
    CHECK_THROWS_AS(ErrorModel::uniform(2, -0.1), config_error);
}

TEST_CASE("gain profile from the scenario") {
    const Scenario s = default_scenario();
    const std::vector<double> eta{1e-3};
    const GainProfile g = make_gain_profile(s, eta);
    REQUIRE(g.zeta.size() == 1);
    // zeta * N is the end-to-end amplitude the beamforming module reports.
    CHECK(g.zeta[0] * 625 == Approx(effective_gain(s, 0, 1e-3)).epsilon(1e-12));
    CHECK_THROWS_AS(make_gain_profile(s, std::vector<double>{1e-3, 1e-3}), config_error);
}

TEST_CASE("closed-form expected power") {
    SUBCASE("zero error: coherent square") {
        GainProfile g{{0.3, 0.2, 0.1}};
        const ErrorModel m = ErrorModel::uniform(3, 0.0);
        const double want = std::pow(5 * 4 * (0.3 + 0.2 + 0.1), 2.0);
        CHECK(expected_power_closed_form(g, m, 5, 4) == Approx(want).epsilon(1e-14));
    }
    SUBCASE("hand-evaluated two-element panel") {
        // nx=2, ny=1, combined u-variance 2: zeta^2 * (2 + 2e^-1).
        GainProfile g{{0.7}};
        ErrorModel m;
        m.sigma_h_u = {1.0};
        m.sigma_g_u = {1.0};
        m.sigma_h_v = {0.0};
        m.sigma_g_v = {0.0};
        const double want = 0.49 * (2 + 2 * std::exp(-1.0));
        CHECK(expected_power_closed_form(g, m, 2, 1) == Approx(want).epsilon(1e-13));
    }
    SUBCASE("large-sigma limit keeps the aligned reference elements") {
        // Per-panel sums collapse to the diagonal (nx*ny); the cross sums
        // collapse to their n=0 terms, leaving 2*sum_{i<j} zeta_i*zeta_j.
        GainProfile g{{1.0, 2.0}};
        const ErrorModel m = ErrorModel::uniform(2, 50.0);
        const double want = (1.0 + 4.0) * 3 * 2 + 2 * (1.0 * 2.0);
        CHECK(expected_power_closed_form(g, m, 3, 2) == Approx(want).epsilon(1e-12));
    }
    SUBCASE("permuting panels leaves the value unchanged") {
        GainProfile g{{0.5, 0.25, 0.125}};
        ErrorModel m;
        m.sigma_h_u = {0.01, 0.02, 0.03};
        m.sigma_g_u = {0.005, 0.01, 0.02};
        m.sigma_h_v = {0.03, 0.02, 0.01};
        m.sigma_g_v = {0.02, 0.01, 0.005};
        const double base = expected_power_closed_form(g, m, 4, 3);
        GainProfile g2{{0.125, 0.5, 0.25}};
        ErrorModel m2;
        m2.sigma_h_u = {0.03, 0.01, 0.02};
        m2.sigma_g_u = {0.02, 0.005, 0.01};
        m2.sigma_h_v = {0.01, 0.03, 0.02};
        m2.sigma_g_v = {0.005, 0.02, 0.01};
        CHECK(expected_power_closed_form(g2, m2, 4, 3) == Approx(base).epsilon(1e-13));
    }
    SUBCASE("a zero-gain panel drops out exactly") {
        GainProfile pair{{0.4, 0.0}};
        GainProfile solo{{0.4}};
        const ErrorModel m2 = ErrorModel::uniform(2, 0.05);
        const ErrorModel m1 = ErrorModel::uniform(1, 0.05);
        CHECK(expected_power_closed_form(pair, m2, 5, 5) ==
              expected_power_closed_form(solo, m1, 5, 5));
    }
    SUBCASE("input contract") {
        GainProfile g{{1.0}};
        const ErrorModel m = ErrorModel::uniform(1, 0.1);
        CHECK_THROWS_AS(expected_power_closed_form(g, m, 0, 5), config_error);
        CHECK_THROWS_AS(expected_power_closed_form(g, ErrorModel::uniform(2, 0.1), 5, 5),
                        config_error);
        CHECK_THROWS_AS(expected_power_closed_form(GainProfile{{-1.0}}, m, 5, 5), config_error);
    }
}

TEST_CASE("sampled amplitude") {
    GainProfile g{{0.25, 1.5}};
    SUBCASE("zero errors give the coherent sum") {
        const std::vector<double> zero{0.0, 0.0};
        const cd y = sample_amplitude(g, zero, zero, 5, 5);
        CHECK(std::abs(y - cd{25 * 1.75, 0}) < 1e-10);
    }
    SUBCASE("matches the brute-force sum for random errors") {
        std::mt19937 gen(9);
        std::uniform_real_distribution<double> uni(-0.5, 0.5);
        for (int rep = 0; rep < 50; ++rep) {
            const std::vector<double> xi_u{uni(gen), uni(gen)};
            const std::vector<double> xi_v{uni(gen), uni(gen)};
            const cd fast = sample_amplitude(g, xi_u, xi_v, 7, 4);
            const cd slow = brute_amplitude(g, xi_u, xi_v, 7, 4);
            CHECK(std::abs(fast - slow) < 1e-10 * std::max(1.0, std::abs(slow)));
        }
    }
    SUBCASE("near-singular phases fall back gracefully") {
        for (const double eps : {0.0, 1e-13, -1e-13, 1e-10}) {
            const std::vector<double> xi_u{eps, 0.0};
            const std::vector<double> xi_v{0.0, eps};
            const cd y = sample_amplitude(g, xi_u, xi_v, 25, 25);
            const cd slow = brute_amplitude(g, xi_u, xi_v, 25, 25);
            CHECK(std::abs(y - slow) < 1e-9 * std::abs(slow));
            // The true amplitude moves at most |dy/dxi| * eps from coherent.
            CHECK(std::abs(y - cd{625 * 1.75, 0}) < 1e-5);
        }
    }
    SUBCASE("even in the error signs") {
        const std::vector<double> xi_u{0.31, -0.12};
        const std::vector<double> xi_v{-0.05, 0.4};
        std::vector<double> neg_u{-0.31, 0.12};
        std::vector<double> neg_v{0.05, -0.4};
        const cd plus = sample_amplitude(g, xi_u, xi_v, 6, 3);
        const cd minus = sample_amplitude(g, neg_u, neg_v, 6, 3);
        CHECK(std::abs(std::abs(plus) - std::abs(minus)) < 1e-12);
    }
}

TEST_CASE("Monte Carlo statistics") {
    SUBCASE("zero error is exact with zero spread") {
        GainProfile g{{0.3, 0.1}};
        const ErrorModel m = ErrorModel::uniform(2, 0.0);
        const McStats stats = mc_statistics(g, m, 5, 5, 1.0, 20000, 4);
        const double want = expected_power_closed_form(g, m, 5, 5);
        CHECK(stats.power_w.value == Approx(want).epsilon(1e-12));
        CHECK(stats.power_w.std_error <= 1e-9 * want);
        CHECK(stats.samples == 20000);
    }
    SUBCASE("agrees with the closed form across sigmas") {
        GainProfile g{{1.0, 0.6, 0.3}};
        for (const double sigma : {0.005 * nums::pi, 0.02 * nums::pi, 0.05 * nums::pi}) {
            const ErrorModel m = ErrorModel::uniform(3, sigma);
            const double want = expected_power_closed_form(g, m, 5, 5);
            const McEstimate est = expected_power_mc(g, m, 5, 5, 200000, 11);
            CHECK(std::abs(est.value - want) <= 3 * est.std_error);
        }
    }
    SUBCASE("a zero-gain panel reduces to single-panel statistics") {
        GainProfile pair{{0.8, 0.0}};
        GainProfile solo{{0.8}};
        const double sigma = 0.02 * nums::pi;
        const double want =
            expected_power_closed_form(solo, ErrorModel::uniform(1, sigma), 5, 5);
        const McEstimate est =
            expected_power_mc(pair, ErrorModel::uniform(2, sigma), 5, 5, 150000, 13);
        CHECK(std::abs(est.value - want) <= 3 * est.std_error);
    }
    SUBCASE("deterministic at any worker count") {
        GainProfile g{{0.5, 0.2}};
        const ErrorModel m = ErrorModel::uniform(2, 0.03);
        const McStats a = mc_statistics(g, m, 4, 4, 1e-6, 100000, 17, 1);
        const McStats b = mc_statistics(g, m, 4, 4, 1e-6, 100000, 17, 3);
        CHECK(a.power_w.value == b.power_w.value);
        CHECK(a.power_w.std_error == b.power_w.std_error);
        CHECK(a.se_bits.value == b.se_bits.value);
    }
}

TEST_CASE("ergodic spectral efficiency") {
    SUBCASE("bound basics") {
        CHECK(ese_upper_bound(1e-12, 1e-12) == Approx(1.0).epsilon(1e-14));
        CHECK(ese_upper_bound(0.0, 1e-12) == 0.0);
        CHECK_THROWS_AS(ese_upper_bound(1.0, 0.0), config_error);
    }
    SUBCASE("zero error meets the bound exactly") {
        GainProfile g{{2e-7}};
        const ErrorModel m = ErrorModel::uniform(1, 0.0);
        const double noise = 3.981071705534969e-13;
        const double power = expected_power_closed_form(g, m, 25, 25);
        const McEstimate se = ergodic_se_mc(g, m, 25, 25, noise, 10000, 5);
        CHECK(se.value == Approx(ese_upper_bound(power, noise)).epsilon(1e-12));
        // Identical samples: only summation cancellation noise remains.
        CHECK(se.std_error <= 1e-6 * se.value);
    }
    SUBCASE("positive error stays below the bound and decays monotonically") {
        GainProfile g{{2e-7, 1e-7}};
        const double noise = 3.981071705534969e-13;
        double prev = 1e9;
        for (const double sigma : {0.0, 0.005 * nums::pi, 0.02 * nums::pi, 0.05 * nums::pi}) {
            const ErrorModel m = ErrorModel::uniform(2, sigma);
            const double bound =
                ese_upper_bound(expected_power_closed_form(g, m, 25, 25), noise);
            const McEstimate se = ergodic_se_mc(g, m, 25, 25, noise, 100000, 19);
            CHECK(se.value <= bound + 3 * se.std_error);
            // One seed pairs the draws, so the sweep decays without noise.
            CHECK(se.value <= prev + 1e-9);
            prev = se.value;
        }
    }
}
