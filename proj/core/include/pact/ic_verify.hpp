#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pact/best_response.hpp"
#include "pact/cost_model.hpp"
#include "pact/mechanism.hpp"

namespace pact {

struct VerifyTolerances {
    double obedience = 1e-8;     // absolute utility units, on- and off-path
    double brute_force = 1e-6;   // worst deviation gain
    double borderline_factor = 10.0;  // residuals within (tol, factor*tol] are indeterminate
};

enum class ConditionVerdict { pass, borderline, fail };
enum class ICVerdict { ic, not_ic, indeterminate };

const char* to_string(ConditionVerdict v);
const char* to_string(ICVerdict v);

/// Residuals and verdicts for the four-condition characterization plus the
/// brute-force deviation scan.
struct ICReport {
    // Envelope: V(theta) - V(lowest) - integral of kappa along the path.
    std::vector<double> envelope_residuals;
    double envelope_tolerance = 0.0;

    // Generalized monotonicity: minimum signed pair integral.
    double monotonicity_min = 0.0;
    double monotonicity_tolerance = 0.0;
    // Range over extreme best-response selections when ties exist
    // (linear family); equal to monotonicity_min otherwise.
    double monotonicity_min_low_selection = 0.0;
    double monotonicity_min_high_selection = 0.0;
    bool has_selection_range = false;

    // Obedience. Positive entries are violations.
    std::vector<double> on_path_inequality;        // per type: max_x u(w) - c - const
    std::vector<double> on_path_support_residual;  // per type: max |u(w) - c - const| on support
    std::vector<std::vector<double>> off_path_gap; // [true][report]: BR value - schedule value
    double off_path_worst = 0.0;

    double brute_force_worst = 0.0;

    ConditionVerdict envelope_verdict = ConditionVerdict::pass;
    ConditionVerdict monotonicity_verdict = ConditionVerdict::pass;
    ConditionVerdict on_path_verdict = ConditionVerdict::pass;
    ConditionVerdict off_path_verdict = ConditionVerdict::pass;

    ICVerdict four_condition_verdict() const;
    ICVerdict brute_force_verdict(const VerifyTolerances& tol = {}) const;
    /// Name of the first failing condition, or empty when all pass.
    std::string first_failing_condition() const;
};

/// Per-type envelope residuals (trapezoid along the type grid).
std::vector<double> check_envelope(const Mechanism& mech, const CostModel& model);

/// Minimum over all ordered type pairs of the signed monotonicity integral.
/// Requires a complete schedule; throws with a pointer to populate_schedule
/// when off-diagonal cells are missing.
double check_gen_monotonicity(const Mechanism& mech, const GenSchedule& sched, const CostModel& model);

struct ObedienceResult {
    std::vector<double> on_path_inequality;
    std::vector<double> on_path_support_residual;
    std::vector<std::vector<double>> off_path_gap;
};

ObedienceResult check_obedience(const Mechanism& mech, const GenSchedule& sched,
                                const CostModel& model, const UtilityFn& u);

/// Worst deviation gain max over (type, report) of V(theta, report) - actual
/// on-path utility of theta. Nonpositive (within tolerance) iff IC.
/// All checkers are pure over immutable inputs; the pair loops may be
/// parallelized by callers and reduce with max/min folds.
double brute_force_ic(const Mechanism& mech, const CostModel& model, const UtilityFn& u);

/// Fill every off-diagonal cell with the agent's best response to the
/// reported type's wage; diagonal mirrors the mechanism.
GenSchedule populate_schedule(const Mechanism& mech, const CostModel& model, const UtilityFn& u);

/// Run all four conditions plus the brute-force scan.
ICReport verify_mechanism(const Mechanism& mech, const GenSchedule& sched, const CostModel& model,
                          const UtilityFn& u, const VerifyTolerances& tol = {});

}  // namespace pact
