#include "pact/wage_builder.hpp"

#include <algorithm>
#include <cmath>

namespace pact {

double punishment_floor(std::span<const double> on_path_payments, const UtilityFn& u) {
    if (on_path_payments.empty()) throw Error("punishment_floor: no payments given");
    const auto [lo_it, hi_it] = std::minmax_element(on_path_payments.begin(), on_path_payments.end());
    double range = *hi_it - *lo_it;
    if (range < 1e-12) range = 1.0;
    double floor = *lo_it - 10.0 * range;
    const double domain_lo = u.domain_lower();
    if (floor <= domain_lo) {
        // Keep a positive gap to the domain edge proportional to the scale.
        floor = domain_lo + 1e-6 * (1.0 + std::fabs(*lo_it - domain_lo));
        floor = std::min(floor, *lo_it);
    }
    return floor;
}

WageSchedule build_wage(double theta, const Dist& rec, double promised, const CostModel& model,
                        const UtilityFn& u, WageMode mode, std::optional<double> floor) {
    const OutputGrid& grid = model.grid();
    if (rec.size() != grid.size()) throw Error("build_wage: recommendation length mismatch");

    const auto c = model.gateaux(theta, rec);
    const double mean_c = expectation(rec, c);
    const double constant = promised + model.cost(theta, rec) - mean_c;

    std::vector<double> formula(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double target = c[i] + constant;
        if (!u.inverse_in_range(target))
            throw DomainError("build_wage: required utility outside the range of u at grid point " +
                                  std::to_string(i),
                              static_cast<std::ptrdiff_t>(i));
        formula[i] = u.inverse(target);
    }

    if (mode == WageMode::equality_everywhere) return WageSchedule(std::move(formula));

    const double w_floor = floor.value_or(punishment_floor(formula, u));
    if (!u.in_domain(w_floor)) throw DomainError("build_wage: floor outside the domain of u");
    const auto supp = rec.support();
    for (std::size_t i : supp)
        if (w_floor > formula[i] + 1e-12)
            throw Error("build_wage: floor exceeds the on-path payment at grid point " + std::to_string(i));

    std::vector<double> pay(grid.size());
    std::vector<bool> on_support(grid.size(), false);
    for (std::size_t i : supp) on_support[i] = true;
    for (std::size_t i = 0; i < grid.size(); ++i)
        pay[i] = on_support[i] ? formula[i] : std::min(formula[i], w_floor);
    return WageSchedule(std::move(pay));
}

WageSchedule monotonize(const WageSchedule& w) {
    std::vector<double> out(w.size());
    double running = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < w.size(); ++i) {
        running = std::max(running, w[i]);
        out[i] = running;
    }
    return WageSchedule(std::move(out));
}

WageSchedule binary_wages(double theta, double p, double v_integral, const CostModel& model,
                          const UtilityFn& u) {
    if (u.kind() != UtilityKind::linear) throw Error("binary_wages: linear payment utility required");
    if (!(p >= 0.0 && p <= 1.0)) throw Error("binary_wages: probability outside [0, 1]");
    const auto z = model.z_values();
    const double z_lo = z.front(), z_hi = z.back();
    const double m = z_lo + p * (z_hi - z_lo);
    const OuterFn& K = model.outer();
    const double base = (1.0 - theta) * (K.value(m) - K.d1(m) * p * (z_hi - z_lo)) + v_integral;
    const double top = (1.0 - theta) * (K.value(m) + K.d1(m) * (1.0 - p) * (z_hi - z_lo)) + v_integral;

    std::vector<double> pay(z.size(), base);
    pay.back() = top;
    return WageSchedule(std::move(pay));
}

}  // namespace pact
