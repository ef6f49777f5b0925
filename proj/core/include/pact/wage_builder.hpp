#pragma once

#include <optional>

#include "pact/best_response.hpp"
#include "pact/cost_model.hpp"
#include "pact/mechanism.hpp"

namespace pact {

enum class WageMode { equality_everywhere, punish_off_support };

/// Wage implementing recommendation `rec` for type `theta` at promised
/// utility `promised`:
///   w(x) = u^{-1}( c_rec(theta, x) + promised + C(theta, rec) - E_rec[c] ).
/// equality_everywhere applies the formula at every grid point;
/// punish_off_support keeps it on the support and pays min(formula, floor)
/// elsewhere. The default floor sits well below every on-path payment,
/// clamped into the domain of u.
/// Throws DomainError when u^{-1} is undefined at some grid point, and
/// Error when the floor exceeds a support payment.
WageSchedule build_wage(double theta, const Dist& rec, double promised, const CostModel& model,
                        const UtilityFn& u, WageMode mode = WageMode::equality_everywhere,
                        std::optional<double> floor = std::nullopt);

/// Running maximum across the ordered grid: nondecreasing, pointwise >= the
/// input, idempotent. Leaves every agent's attainable value unchanged.
WageSchedule monotonize(const WageSchedule& w);

/// Payment level strictly below every listed on-path payment, clamped into
/// the domain of u. Used as the punishment default; solvers pass the pooled
/// payments of all types so the punishment level is menu-wide.
double punishment_floor(std::span<const double> on_path_payments, const UtilityFn& u);

/// Closed-form wage pair for a binary recommendation (mass p on the top
/// output) in the composite family with linear payment utility:
///   w(x < x_n) = (1-theta)[K(m) - K'(m) p (z_n - z_1)] + v_integral
///   w(x_n)     = (1-theta)[K(m) + K'(m)(1-p)(z_n - z_1)] + v_integral
/// with m = z_1 + p (z_n - z_1). v_integral is the accumulated information
/// rent (the promised utility of the type).
WageSchedule binary_wages(double theta, double p, double v_integral, const CostModel& model,
                          const UtilityFn& u);

}  // namespace pact
