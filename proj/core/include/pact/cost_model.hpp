#pragma once

#include <span>
#include <vector>

#include "pact/dist.hpp"
#include "pact/grids.hpp"
#include "pact/kernel.hpp"
#include "pact/outer.hpp"
#include "pact/utility.hpp"

namespace pact {

enum class CostFamily { linear, composite };

/// Cost of producing an output distribution: (1 - theta) * K(mean kernel).
/// The linear family fixes K to the identity. Bound to an output grid so the
/// kernel values are evaluated once.
class CostModel {
public:
    static CostModel linear(KernelFn z, OutputGrid grid);
    static CostModel composite(KernelFn z, OuterFn outer, OutputGrid grid);

    CostFamily family() const { return family_; }
    const OutputGrid& grid() const { return grid_; }
    const KernelFn& kernel() const { return kernel_; }
    const OuterFn& outer() const { return outer_; }
    std::span<const double> z_values() const { return z_values_; }
    double z_min() const { return z_values_.front(); }
    double z_max() const { return z_values_.back(); }

    /// Mean kernel value m = E_mu[z].
    double mean_kernel(const Dist& mu) const;
    /// kappa(mu) = K(E_mu[z]).
    double kappa(const Dist& mu) const;
    double kappa_of_mean(double m) const { return outer_.value(m); }

    /// C(theta, mu) = (1 - theta) * kappa(mu). theta must lie in (0, 1).
    double cost(double theta, const Dist& mu) const;

    /// Marginal cost of shifting mass toward each output point:
    /// x -> (1 - theta) * K'(E_mu[z]) * z(x).
    std::vector<double> gateaux(double theta, const Dist& mu) const;

    /// dC/dtheta = -kappa(mu); exact for both families.
    double dcost_dtheta(double theta, const Dist& mu) const;

private:
    CostModel(CostFamily family, KernelFn z, OuterFn outer, OutputGrid grid);
    void check_theta(double theta) const;

    CostFamily family_;
    KernelFn kernel_;
    OuterFn outer_;
    OutputGrid grid_;
    std::vector<double> z_values_;
};

/// Curvature-dominance test used before the binary-support reduction with a
/// risk-averse agent: at every grid point,
///   -z''(x)/z'(x) >= -u''(A z(x)+B)/u'(A z(x)+B) * [A z'(x)/u'(A z(x)+B)]^2.
/// Requires z(x_1) = 0 and A, B > 0. Throws on nondifferentiable primitives.
bool curvature_condition_holds(const UtilityFn& u, const KernelFn& z, double A, double B,
                               const OutputGrid& grid);

}  // namespace pact
