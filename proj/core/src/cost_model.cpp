#include "pact/cost_model.hpp"

#include <cmath>

namespace pact {

CostModel::CostModel(CostFamily family, KernelFn z, OuterFn outer, OutputGrid grid)
    : family_(family), kernel_(std::move(z)), outer_(std::move(outer)), grid_(std::move(grid)) {
    kernel_.require_increasing_on(grid_);
    z_values_ = kernel_.values_on(grid_);
    if (outer_.kind() == OuterKind::power && z_values_.front() < 0.0)
        throw Error("CostModel: power outer requires nonnegative kernel values");
    outer_.require_convex_increasing_on(z_values_.front(), z_values_.back());
}

CostModel CostModel::linear(KernelFn z, OutputGrid grid) {
    return CostModel(CostFamily::linear, std::move(z), OuterFn::identity(), std::move(grid));
}

CostModel CostModel::composite(KernelFn z, OuterFn outer, OutputGrid grid) {
    return CostModel(CostFamily::composite, std::move(z), std::move(outer), std::move(grid));
}

void CostModel::check_theta(double theta) const {
    if (!(theta >= 0.0 && theta < 1.0)) throw Error("CostModel: type must lie in [0, 1)");
}

double CostModel::mean_kernel(const Dist& mu) const { return expectation(mu, z_values_); }

double CostModel::kappa(const Dist& mu) const { return outer_.value(mean_kernel(mu)); }

double CostModel::cost(double theta, const Dist& mu) const {
    check_theta(theta);
    return (1.0 - theta) * kappa(mu);
}

std::vector<double> CostModel::gateaux(double theta, const Dist& mu) const {
    check_theta(theta);
    const double slope = (1.0 - theta) * outer_.d1(mean_kernel(mu));
    std::vector<double> out(z_values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = slope * z_values_[i];
    return out;
}

double CostModel::dcost_dtheta(double theta, const Dist& mu) const {
    check_theta(theta);
    return -kappa(mu);
}

bool curvature_condition_holds(const UtilityFn& u, const KernelFn& z, double A, double B,
                               const OutputGrid& grid) {
    if (!(A > 0.0 && B > 0.0)) throw Error("curvature_condition_holds: A and B must be positive");
    if (std::fabs(z.value(grid.min())) > 1e-9)
        throw Error("curvature_condition_holds: kernel must vanish at the lowest output");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const double zp = z.d1(x);
        const double zpp = z.d2(x);
        const double arg = A * z.value(x) + B;
        if (!u.in_domain(arg))
            throw DomainError("curvature_condition_holds: utility undefined at probed payment",
                              static_cast<std::ptrdiff_t>(i));
        const double up = u.d1(arg);
        const double upp = u.d2(arg);
        if (!std::isfinite(zp) || !std::isfinite(zpp) || !std::isfinite(up) || !std::isfinite(upp) ||
            !(zp > 0.0) || !(up > 0.0))
            throw Error("curvature_condition_holds: nondifferentiable primitive at a grid point");
        const double lhs = -zpp / zp;
        const double rhs = (-upp / up) * (A * zp / up) * (A * zp / up);
        if (lhs < rhs - 1e-12 * (1.0 + std::fabs(rhs))) return false;
    }
    return true;
}

}  // namespace pact
