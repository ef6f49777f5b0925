#pragma once

#include <limits>
#include <string>

#include "pact/common.hpp"

namespace pact {

enum class UtilityKind { linear, crra, cara, log_shifted };

/// Strictly increasing, continuous, weakly concave payment utility with an
/// analytic inverse and first two derivatives.
class UtilityFn {
public:
    static UtilityFn linear();
    /// u(w) = (w^(1-gamma) - 1) / (1 - gamma), gamma > 0, gamma != 1; domain w > 0.
    static UtilityFn crra(double gamma);
    /// u(w) = (1 - exp(-alpha w)) / alpha, alpha > 0; domain all of R.
    static UtilityFn cara(double alpha);
    /// u(w) = log(w + shift); domain w > -shift.
    static UtilityFn log_shifted(double shift);

    UtilityKind kind() const { return kind_; }
    double parameter() const { return param_; }

    double value(double w) const;
    double d1(double w) const;
    double d2(double w) const;

    /// u^{-1}(v). Throws DomainError when v is outside the range of u.
    double inverse(double v) const;
    bool inverse_in_range(double v) const;

    /// Greatest lower bound of the wage domain (-inf when unbounded).
    double domain_lower() const;
    bool in_domain(double w) const;

    std::string name() const;

private:
    UtilityFn(UtilityKind kind, double param) : kind_(kind), param_(param) {}
    UtilityKind kind_;
    double param_;
};

}  // namespace pact
