#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pact/best_response.hpp"
#include "pact/cost_model.hpp"

namespace pact::testing {

/// Direct enumeration of degenerate distributions for the linear-family
/// agent problem: max_i u(w_i) - (1-theta) z_i.
double enumerate_vertex_value(const WageSchedule& w, double theta, const CostModel& model,
                              const UtilityFn& u);

/// Principal's payoff from recommending mu to a fixed type at a fixed
/// promised utility, with the wage built from the obedience formula:
/// E_mu[x - w_mu(x)]. Returns -inf when the wage is undefined for mu.
double principal_payoff(const Dist& mu, double theta, double promised, const CostModel& model,
                        const UtilityFn& u);

/// Generic simplex maximizer for the principal's per-type relaxed problem:
/// projected gradient ascent with finite-difference gradients from several
/// seeded random starts. Knows nothing about the structure of the optimum.
Dist maximize_principal_payoff(double theta, double promised, const CostModel& model,
                               const UtilityFn& u, std::size_t starts, std::uint64_t seed);

/// 1-d scan oracle for the binary pointwise principal objective
///   x_1 + p (x_n - x_1) - phi * K(z_1 + p (z_n - z_1))
/// over p in [0, 1]; returns the best scanned p.
double scan_binary_allocation(double phi, const CostModel& model, std::size_t steps);

/// Scan oracle for the degenerate pointwise principal objective
///   x_i - phi * K(z_i); returns the best grid index.
std::size_t scan_degenerate_allocation(double phi, const CostModel& model);

}  // namespace pact::testing
