#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pact/common.hpp"
#include "pact/grids.hpp"

namespace pact {

enum class TypeDistKind { uniform, beta, table };

/// Distribution of the productivity type on [lower, upper] with an
/// everywhere positive density.
class TypeDistribution {
public:
    static TypeDistribution uniform(double lower, double upper);
    /// Beta(a, b) rescaled from [0, 1] to [lower, upper]. Shapes above 1 make
    /// the density vanish at the exact support edge; virtual_value then
    /// refuses evaluation there.
    static TypeDistribution beta(double a, double b, double lower, double upper);
    /// Piecewise-linear density through (theta_k, f_k) pairs; normalized so
    /// the cdf reaches 1 at the upper end.
    static TypeDistribution table(std::vector<double> theta, std::vector<double> density);

    TypeDistKind kind() const { return kind_; }
    double lower() const { return lower_; }
    double upper() const { return upper_; }
    double a() const { return a_; }
    double b() const { return b_; }
    const std::vector<double>& table_theta() const { return ttheta_; }
    const std::vector<double>& table_density() const { return tdensity_; }

    double cdf(double theta) const;
    double density(double theta) const;

    std::string name() const;

private:
    TypeDistribution(TypeDistKind kind, double lower, double upper) : kind_(kind), lower_(lower), upper_(upper) {}
    TypeDistKind kind_;
    double lower_, upper_;
    double a_ = 0, b_ = 0;
    std::vector<double> ttheta_, tdensity_, tcdf_;
};

/// 1 - theta + (1 - F(theta)) / f(theta). Throws on nonpositive density.
double virtual_value(const TypeDistribution& F, double theta);

/// Grid-level screening regularity diagnostics.
struct RegularityReport {
    std::vector<double> virtual_values;           // per grid point
    std::vector<double> gap_factors;              // (1-theta) f / (1-F); last point excluded
    bool virtual_value_monotone = false;          // nonincreasing across the grid
    bool gap_factor_monotone = false;             // nondecreasing across the grid
    std::vector<std::pair<std::size_t, std::size_t>> virtual_violations;  // grid intervals
    std::vector<std::pair<std::size_t, std::size_t>> gap_violations;

    bool regular() const { return virtual_value_monotone; }
};

RegularityReport check_regularity(const TypeDistribution& F, const TypeGrid& grid);

}  // namespace pact
