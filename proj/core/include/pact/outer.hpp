#pragma once

#include <string>

#include "pact/common.hpp"

namespace pact {

enum class OuterKind { identity, power, exponential };

/// Strictly increasing convex outer cost K applied to the mean kernel value.
class OuterFn {
public:
    static OuterFn identity();
    /// K(m) = scale * m^exponent; exponent >= 1, scale > 0; domain m >= 0.
    static OuterFn power(double exponent, double scale = 1.0);
    /// K(m) = scale * (exp(rate m) - 1) / rate; rate > 0, scale > 0.
    static OuterFn exponential(double rate, double scale = 1.0);

    OuterKind kind() const { return kind_; }
    double exponent() const { return p0_; }
    double rate() const { return p0_; }
    double scale() const { return p1_; }

    double value(double m) const;
    double d1(double m) const;

    /// True when K' is strictly increasing (the interior first-order
    /// condition in m has a unique root).
    bool strictly_convex() const;

    /// Throws unless K' > 0 and nondecreasing on probe points in [lo, hi].
    void require_convex_increasing_on(double lo, double hi) const;

    std::string name() const;

private:
    OuterFn(OuterKind kind, double p0, double p1) : kind_(kind), p0_(p0), p1_(p1) {}
    OuterKind kind_;
    double p0_ = 0, p1_ = 1;
};

}  // namespace pact
