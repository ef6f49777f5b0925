#pragma once

#include <string>
#include <vector>

#include "pact/common.hpp"
#include "pact/grids.hpp"

namespace pact {

enum class KernelKind { power, affine, exponential, table };

/// Strictly increasing per-output cost kernel z with first and second
/// derivatives. Table kernels interpolate piecewise linearly with one-sided
/// derivatives at breakpoints.
class KernelFn {
public:
    /// z(x) = scale * x^exponent + shift; scale > 0, exponent > 0.
    static KernelFn power(double scale, double exponent, double shift = 0.0);
    /// z(x) = slope * x + intercept; slope > 0.
    static KernelFn affine(double slope, double intercept = 0.0);
    /// z(x) = scale * exp(rate * x) + shift; scale * rate > 0.
    static KernelFn exponential(double scale, double rate, double shift = 0.0);
    /// Piecewise-linear through (x_k, z_k); both sequences strictly increasing.
    static KernelFn table(std::vector<double> x, std::vector<double> z);

    KernelKind kind() const { return kind_; }

    double value(double x) const;
    double d1(double x) const;
    double d2(double x) const;

    /// z at every grid point.
    std::vector<double> values_on(const OutputGrid& grid) const;

    /// Throws unless z is strictly increasing across the grid with positive
    /// one-sided slopes.
    void require_increasing_on(const OutputGrid& grid) const;

    std::string name() const;
    // Parameter access for serialization.
    double p0() const { return p0_; }
    double p1() const { return p1_; }
    double p2() const { return p2_; }
    const std::vector<double>& table_x() const { return tx_; }
    const std::vector<double>& table_z() const { return tz_; }

private:
    KernelFn(KernelKind kind, double p0, double p1, double p2) : kind_(kind), p0_(p0), p1_(p1), p2_(p2) {}
    KernelKind kind_;
    double p0_ = 0, p1_ = 0, p2_ = 0;
    std::vector<double> tx_, tz_;
};

/// Grid-level shape checks via chord slopes (convex = slopes nondecreasing).
bool kernel_convex_on(const KernelFn& z, const OutputGrid& grid, double tol = 1e-9);
bool kernel_concave_on(const KernelFn& z, const OutputGrid& grid, double tol = 1e-9);

}  // namespace pact
