#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pact/cost_model.hpp"
#include "pact/dist.hpp"
#include "pact/mechanism.hpp"

namespace pact {

/// Solution of the agent's problem max_mu E_mu[u(w)] - C(theta, mu).
struct BestResponse {
    Dist argmax_dist;
    double value = 0.0;
    double mean_kernel = 0.0;                 // E[z] under argmax_dist
    std::vector<std::size_t> tie_set;         // linear family: all optimal vertices
};

/// Linear family: the objective is linear in mu, so a vertex is optimal.
/// Among optimal vertices the largest output is selected; tie_set lists all
/// vertices within kTieTolerance of the maximum.
BestResponse best_response_linear(const WageSchedule& w, double theta, const CostModel& model,
                                  const UtilityFn& u);

/// Composite family: reduce to one dimension via the upper concave envelope
/// of (z_i, u(w_i)), ternary-search the concave objective in the mean kernel
/// value, then reconstruct a vertex or two-point mixture on the active hull
/// segment.
BestResponse best_response_composite(const WageSchedule& w, double theta, const CostModel& model,
                                     const UtilityFn& u);

/// Dispatch on the model family.
BestResponse best_response(const WageSchedule& w, double theta, const CostModel& model,
                           const UtilityFn& u);

/// Brute-force oracle, independent of the methods above. Two-point grids are
/// scanned on a uniform probability grid; larger grids run accelerated
/// projected-gradient ascent from `restarts` seeded random starts. Best-effort
/// lower bound on the true value.
BestResponse best_response_oracle(const WageSchedule& w, double theta, const CostModel& model,
                                  const UtilityFn& u, std::size_t grid_steps = 20001,
                                  std::uint64_t seed = 0, std::size_t restarts = 20);

/// Upper concave envelope of the point set {(m[i], h[i])} with m strictly
/// increasing. Collinear points are kept so exact ties reconstruct as a
/// vertex. Returns indices into the input arrays.
std::vector<std::size_t> upper_concave_envelope(std::span<const double> m, std::span<const double> h);

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> v);

namespace detail {
/// Oracle core over raw arrays; accepts n >= 1 (a single feasible action is
/// returned unchanged).
BestResponse simplex_ascent_oracle(std::span<const double> utilities, std::span<const double> z_values,
                                   double one_minus_theta, const OuterFn& outer,
                                   std::size_t grid_steps, std::uint64_t seed, std::size_t restarts);
}  // namespace detail

}  // namespace pact
