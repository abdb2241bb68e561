#include "rissim/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rissim {

namespace {

void check_budget(double total_power_w) {
    if (!(total_power_w > 0.0)) throw config_error("power budget must be positive");
}

double sensing_objective(std::span<const double> loss, std::span<const double> eta) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < loss.size(); ++i)
        worst = std::min(worst, loss[i] * loss[i] * eta[i]);
    return worst;
}

double communication_objective(std::span<const double> c, std::span<const double> eta) {
    double acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * std::sqrt(eta[i]);
    return acc;
}

} // namespace

PowerAllocation sensing_allocation(std::span<const double> loss_b2r, double total_power_w) {
    check_budget(total_power_w);
    if (loss_b2r.empty()) throw config_error("allocation needs at least one panel");
    for (double a : loss_b2r)
        if (!(a > 0.0)) throw config_error("sensing allocation needs positive amplitudes");

    // Equalize rho_i^2 * eta_i: any imbalance could fund the worst panel.
    double inv_sum = 0.0;
    for (double a : loss_b2r) inv_sum += 1.0 / (a * a);
    const double t = total_power_w / inv_sum;

    PowerAllocation out{AllocationMode::sensing, {}, t};
    out.eta_w.reserve(loss_b2r.size());
    for (double a : loss_b2r) out.eta_w.push_back(t / (a * a));
    return out;
}

PowerAllocation communication_allocation(std::span<const double> coefficients,
                                         double total_power_w) {
    check_budget(total_power_w);
    if (coefficients.empty()) throw config_error("allocation needs at least one panel");
    double c2_sum = 0.0;
    for (double c : coefficients) {
        if (!(c >= 0.0)) throw config_error("communication coefficients must be non-negative");
        c2_sum += c * c;
    }
    if (c2_sum == 0.0)
        throw config_error("communication allocation needs a positive coefficient");

    // Stationarity of sum c_k*sqrt(eta_k) on the budget: eta_k proportional
    // to c_k^2.
    PowerAllocation out{AllocationMode::communication, {},
                        std::sqrt(total_power_w) * std::sqrt(c2_sum)};
    out.eta_w.reserve(coefficients.size());
    for (double c : coefficients) out.eta_w.push_back(total_power_w * c * c / c2_sum);
    return out;
}

PowerAllocation oracle_grid_search(AllocationMode mode, std::span<const double> coefficients,
                                   double total_power_w, double resolution_w) {
    check_budget(total_power_w);
    if (coefficients.empty()) throw config_error("allocation needs at least one panel");
    if (!(resolution_w > 0.0)) throw config_error("grid resolution must be positive");
    const std::size_t k = coefficients.size();
    if (k > 4)
        throw infeasible_error("grid oracle supports at most 4 panels, got " +
                               std::to_string(k));

    const long steps = std::lround(total_power_w / resolution_w);
    if (steps < 1) throw config_error("grid resolution exceeds the budget");

    std::vector<long> idx(k, 0);
    std::vector<double> eta(k, 0.0), best_eta(k, 0.0);
    double best = -std::numeric_limits<double>::infinity();

    auto evaluate = [&] {
        for (std::size_t i = 0; i < k; ++i)
            eta[i] = total_power_w * static_cast<double>(idx[i]) / static_cast<double>(steps);
        const double value = mode == AllocationMode::sensing
                                 ? sensing_objective(coefficients, eta)
                                 : communication_objective(coefficients, eta);
        if (value > best) {
            best = value;
            best_eta = eta;
        }
    };

    // Enumerate lattice points of the simplex sum(idx) == steps; the last
    // coordinate absorbs the remainder.
    auto recurse = [&](auto&& self, std::size_t i, long remaining) -> void {
        if (i + 1 == k) {
            idx[i] = remaining;
            evaluate();
            return;
        }
        for (long v = 0; v <= remaining; ++v) {
            idx[i] = v;
            self(self, i + 1, remaining - v);
        }
    };
    recurse(recurse, 0, steps);

    return {mode, std::move(best_eta), best};
}

} // namespace rissim
