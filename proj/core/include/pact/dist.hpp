#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pact/common.hpp"
#include "pact/grids.hpp"

namespace pact {

/// Probability vector over an OutputGrid. Immutable after construction;
/// weights are nonnegative and sum to one within kMassTolerance.
class Dist {
public:
    explicit Dist(std::vector<double> mass);

    std::size_t size() const { return mass_.size(); }
    double operator[](std::size_t i) const { return mass_[i]; }
    std::span<const double> masses() const { return mass_; }

    /// Indices carrying mass above kSupportThreshold.
    std::vector<std::size_t> support() const;

    bool operator==(const Dist&) const = default;

private:
    std::vector<double> mass_;
};

/// Point mass at grid index `index`.
Dist make_dirac(const OutputGrid& grid, std::size_t index);

/// True iff b first-order stochastically dominates a: the cdf of b lies
/// weakly below the cdf of a at every grid point. Requires equal lengths
/// (same grid).
bool fosd_leq(const Dist& a, const Dist& b);

/// Sum_i mass(i) * values(i). Lengths must match.
double expectation(const Dist& d, std::span<const double> values);

/// Convex combination (1-t) a + t b, t in [0, 1].
Dist mix(const Dist& a, const Dist& b, double t);

}  // namespace pact
