#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pact/cost_model.hpp"
#include "pact/ic_verify.hpp"
#include "pact/mechanism.hpp"
#include "pact/type_distribution.hpp"
#include "pact/wage_builder.hpp"

namespace pact {

struct SolverOptions {
    double v_lower = 0.0;                          // promised utility of the lowest type; >= 0
    WageMode wage_mode = WageMode::punish_off_support;
    bool monotonize_wages = true;
    double bisection_tol = 1e-12;                  // probability-space tolerance
    std::uint64_t seed = 0;
};

struct RevenuePair {
    double direct = 0.0;                           // E[x - w] under the menu
    std::optional<double> virtual_form;            // information-rent form; linear utility only
    double difference = 0.0;                       // direct - virtual (0 when virtual missing)
    double quad_tolerance = 0.0;                   // combined quadrature error estimate
};

struct SolveResult {
    Mechanism mechanism;
    GenSchedule schedule;
    RevenuePair revenue;
    RegularityReport regularity;
    std::vector<bool> corner_flags;                // per type: solution at a bound
    std::vector<double> solved_p;                  // binary pipeline: mass on the top output
    bool allocation_monotone = true;               // kappa path nondecreasing across types
    std::optional<ICReport> ic_report;             // populated when regularity is flagged
};

/// Pointwise virtual-surplus maximization with degenerate recommendations
/// (convex kernel). Each type is assigned the grid output maximizing
/// x - virtual_value(theta) * K(z(x)); wages are step wages built from the
/// punishment mode and monotonized. Requires linear payment utility.
SolveResult solve_degenerate(const CostModel& model, const TypeDistribution& F, const TypeGrid& types,
                             const UtilityFn& u, const SolverOptions& options = {});

/// Binary-support pipeline (concave kernel, composite family): per type the
/// top-output probability solves the first-order condition
///   (x_n - x_1)/(z_n - z_1) = virtual_value(theta) * K'(z_1 + p (z_n - z_1))
/// by monotone bisection, clipped to [0, 1]. A linear K degenerates the
/// condition; the solver falls back to a bang-bang sign test.
SolveResult solve_binary(const CostModel& model, const TypeDistribution& F, const TypeGrid& types,
                         const UtilityFn& u, const SolverOptions& options = {});

/// Both revenue evaluators. The virtual form requires linear utility and is
/// omitted otherwise.
RevenuePair revenue(const Mechanism& mech, const TypeDistribution& F, const CostModel& model,
                    const UtilityFn& u);

/// Replace every recommendation with a point mass carrying the same kappa,
/// snapped to the nearest grid point above; promised utilities are kept and
/// wages rebuilt. Convex kernels only.
Mechanism degenerate_transform(const Mechanism& mech, const GenSchedule& sched, const CostModel& model,
                               const UtilityFn& u);

struct BinaryTransformResult {
    Mechanism mechanism;
    bool a_monotone = true;                        // (1-theta) K'(m_theta) nondecreasing
    std::vector<double> a_values;
};

/// Replace every recommendation with the extreme-output two-point
/// distribution carrying the same kappa; promised utilities are kept and
/// wages rebuilt. Requires a concave kernel with z(x_1) = 0 and the
/// curvature-dominance condition at every mechanism-induced (A, B) pair;
/// refuses with a diagnostic otherwise.
BinaryTransformResult binary_transform(const Mechanism& mech, const GenSchedule& sched,
                                       const CostModel& model, const UtilityFn& u);

}  // namespace pact
