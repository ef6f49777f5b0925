#include "pact/type_distribution.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/beta.hpp>

namespace pact {

namespace {
void require_bounds(double lower, double upper) {
    if (!(0.0 <= lower && lower < upper && upper <= 1.0))
        throw Error("TypeDistribution: need 0 <= lower < upper <= 1");
}
}  // namespace

TypeDistribution TypeDistribution::uniform(double lower, double upper) {
    require_bounds(lower, upper);
    return TypeDistribution(TypeDistKind::uniform, lower, upper);
}

TypeDistribution TypeDistribution::beta(double a, double b, double lower, double upper) {
    require_bounds(lower, upper);
    if (!(a > 0.0 && b > 0.0)) throw Error("TypeDistribution::beta: shape parameters must be positive");
    TypeDistribution d(TypeDistKind::beta, lower, upper);
    d.a_ = a;
    d.b_ = b;
    return d;
}

TypeDistribution TypeDistribution::table(std::vector<double> theta, std::vector<double> density) {
    if (theta.size() != density.size() || theta.size() < 2)
        throw Error("TypeDistribution::table: need matching lists of >= 2 points");
    for (std::size_t i = 0; i + 1 < theta.size(); ++i)
        if (!(theta[i] < theta[i + 1])) throw Error("TypeDistribution::table: thetas must be strictly increasing");
    require_bounds(theta.front(), theta.back());
    for (double f : density)
        if (!(f > 0.0)) throw Error("TypeDistribution::table: density must be positive everywhere");

    TypeDistribution d(TypeDistKind::table, theta.front(), theta.back());
    // Normalize so the piecewise-linear density integrates to exactly 1.
    const double total = trapezoid(theta, density);
    if (!(total > 0.0)) throw Error("TypeDistribution::table: density integrates to zero");
    for (double& f : density) f /= total;
    d.tcdf_ = trapezoid_prefix(theta, density);
    d.tcdf_.back() = 1.0;
    d.ttheta_ = std::move(theta);
    d.tdensity_ = std::move(density);
    return d;
}

double TypeDistribution::cdf(double theta) const {
    if (theta <= lower_) return 0.0;
    if (theta >= upper_) return 1.0;
    switch (kind_) {
        case TypeDistKind::uniform: return (theta - lower_) / (upper_ - lower_);
        case TypeDistKind::beta: return boost::math::ibeta(a_, b_, (theta - lower_) / (upper_ - lower_));
        case TypeDistKind::table: {
            auto it = std::upper_bound(ttheta_.begin(), ttheta_.end(), theta);
            std::size_t i = static_cast<std::size_t>(it - ttheta_.begin()) - 1;
            i = std::min(i, ttheta_.size() - 2);
            const double t = theta - ttheta_[i];
            const double slope = (tdensity_[i + 1] - tdensity_[i]) / (ttheta_[i + 1] - ttheta_[i]);
            return tcdf_[i] + tdensity_[i] * t + 0.5 * slope * t * t;
        }
    }
    return 0.0;
}

double TypeDistribution::density(double theta) const {
    const double t01 = (theta - lower_) / (upper_ - lower_);
    switch (kind_) {
        case TypeDistKind::uniform: return 1.0 / (upper_ - lower_);
        case TypeDistKind::beta:
            return boost::math::ibeta_derivative(a_, b_, std::clamp(t01, 0.0, 1.0)) / (upper_ - lower_);
        case TypeDistKind::table: {
            const double th = std::clamp(theta, lower_, upper_);
            auto it = std::upper_bound(ttheta_.begin(), ttheta_.end(), th);
            std::size_t i = (it == ttheta_.begin()) ? 0 : static_cast<std::size_t>(it - ttheta_.begin()) - 1;
            i = std::min(i, ttheta_.size() - 2);
            const double w = (th - ttheta_[i]) / (ttheta_[i + 1] - ttheta_[i]);
            return tdensity_[i] + w * (tdensity_[i + 1] - tdensity_[i]);
        }
    }
    return 0.0;
}

std::string TypeDistribution::name() const {
    switch (kind_) {
        case TypeDistKind::uniform: return "uniform";
        case TypeDistKind::beta: return "beta";
        case TypeDistKind::table: return "table";
    }
    return "?";
}

double virtual_value(const TypeDistribution& F, double theta) {
    const double f = F.density(theta);
    if (!(f > 0.0)) throw Error("virtual_value: nonpositive density");
    return 1.0 - theta + (1.0 - F.cdf(theta)) / f;
}

RegularityReport check_regularity(const TypeDistribution& F, const TypeGrid& grid) {
    RegularityReport report;
    const std::size_t m = grid.size();
    report.virtual_values.resize(m);
    for (std::size_t j = 0; j < m; ++j) report.virtual_values[j] = virtual_value(F, grid[j]);

    // (1-theta) f / (1-F), undefined at the top where 1-F vanishes.
    for (std::size_t j = 0; j < m; ++j) {
        const double theta = grid[j];
        const double tail = 1.0 - F.cdf(theta);
        if (tail <= 0.0) break;
        report.gap_factors.push_back((1.0 - theta) * F.density(theta) / tail);
    }

    report.virtual_value_monotone = true;
    for (std::size_t j = 0; j + 1 < m; ++j) {
        const double slack = 1e-12 * (1.0 + std::fabs(report.virtual_values[j]));
        if (report.virtual_values[j + 1] > report.virtual_values[j] + slack) {
            report.virtual_value_monotone = false;
            report.virtual_violations.emplace_back(j, j + 1);
        }
    }
    report.gap_factor_monotone = true;
    for (std::size_t j = 0; j + 1 < report.gap_factors.size(); ++j) {
        const double slack = 1e-12 * (1.0 + std::fabs(report.gap_factors[j]));
        if (report.gap_factors[j + 1] < report.gap_factors[j] - slack) {
            report.gap_factor_monotone = false;
            report.gap_violations.emplace_back(j, j + 1);
        }
    }
    return report;
}

}  // namespace pact
