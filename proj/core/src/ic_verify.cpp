#include "pact/ic_verify.hpp"

#include <algorithm>
#include <cmath>

namespace pact {

const char* to_string(ConditionVerdict v) {
    switch (v) {
        case ConditionVerdict::pass: return "pass";
        case ConditionVerdict::borderline: return "borderline";
        case ConditionVerdict::fail: return "fail";
    }
    return "?";
}

const char* to_string(ICVerdict v) {
    switch (v) {
        case ICVerdict::ic: return "IC";
        case ICVerdict::not_ic: return "NOT-IC";
        case ICVerdict::indeterminate: return "INDETERMINATE";
    }
    return "?";
}

namespace {

ConditionVerdict classify(double violation, double tol, double borderline_factor) {
    if (violation <= tol) return ConditionVerdict::pass;
    if (violation <= borderline_factor * tol) return ConditionVerdict::borderline;
    return ConditionVerdict::fail;
}

std::vector<double> kappa_path(const Mechanism& mech, const CostModel& model) {
    std::vector<double> out(mech.num_types());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = model.kappa(mech.recommendation(j));
    return out;
}

double actual_on_path_utility(const Mechanism& mech, std::size_t j, const CostModel& model,
                              const UtilityFn& u) {
    const Dist& rec = mech.recommendation(j);
    const WageSchedule& w = mech.wage(j);
    double eu = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) eu += rec[i] * u.value(w[i]);
    return eu - model.cost(mech.type_grid()[j], rec);
}

}  // namespace

std::vector<double> check_envelope(const Mechanism& mech, const CostModel& model) {
    const auto kappa = kappa_path(mech, model);
    const auto rents = trapezoid_prefix(mech.type_grid().points(), kappa);
    std::vector<double> residuals(mech.num_types());
    const double v0 = mech.promised_utility(0);
    for (std::size_t j = 0; j < residuals.size(); ++j)
        residuals[j] = mech.promised_utility(j) - v0 - rents[j];
    return residuals;
}

double check_gen_monotonicity(const Mechanism& mech, const GenSchedule& sched, const CostModel& model) {
    if (!sched.complete())
        throw Error("check_gen_monotonicity: schedule has unset cells; populate via populate_schedule");
    const std::size_t m = mech.num_types();
    const auto types = mech.type_grid().points();
    const auto kappa_on = kappa_path(mech, model);

    double min_integral = 0.0;
    for (std::size_t j = 0; j < m; ++j) {          // report
        // kappa of the continuation for each intermediate true type t.
        std::vector<double> kappa_dev(m);
        for (std::size_t t = 0; t < m; ++t) kappa_dev[t] = model.kappa(sched.at(t, j));
        for (std::size_t i = 0; i < m; ++i) {      // true type
            if (i == j) continue;
            const std::size_t lo = std::min(i, j), hi = std::max(i, j);
            double integral = 0.0;
            for (std::size_t t = lo; t < hi; ++t) {
                const double g0 = kappa_on[t] - kappa_dev[t];
                const double g1 = kappa_on[t + 1] - kappa_dev[t + 1];
                integral += 0.5 * (g0 + g1) * (types[t + 1] - types[t]);
            }
            if (i < j) integral = -integral;       // signed orientation
            min_integral = std::min(min_integral, integral);
        }
    }
    return min_integral;
}

ObedienceResult check_obedience(const Mechanism& mech, const GenSchedule& sched,
                                const CostModel& model, const UtilityFn& u) {
    if (!sched.complete())
        throw Error("check_obedience: schedule has unset cells; populate via populate_schedule");
    const std::size_t m = mech.num_types();
    const auto types = mech.type_grid().points();
    ObedienceResult res;
    res.on_path_inequality.resize(m);
    res.on_path_support_residual.resize(m);
    res.off_path_gap.assign(m, std::vector<double>(m, 0.0));

    for (std::size_t j = 0; j < m; ++j) {
        const double theta = types[j];
        const Dist& rec = mech.recommendation(j);
        const WageSchedule& w = mech.wage(j);
        const auto c = model.gateaux(theta, rec);
        const double constant =
            mech.promised_utility(j) + model.cost(theta, rec) - expectation(rec, c);

        double worst_ineq = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < w.size(); ++i)
            worst_ineq = std::max(worst_ineq, u.value(w[i]) - c[i] - constant);
        res.on_path_inequality[j] = worst_ineq;

        double worst_support = 0.0;
        for (std::size_t i : rec.support())
            worst_support = std::max(worst_support, std::fabs(u.value(w[i]) - c[i] - constant));
        res.on_path_support_residual[j] = worst_support;
    }

    for (std::size_t i = 0; i < m; ++i) {
        const double theta = types[i];
        for (std::size_t j = 0; j < m; ++j) {
            const Dist& continuation = sched.at(i, j);
            const WageSchedule& w = mech.wage(j);
            double eu = 0.0;
            for (std::size_t k = 0; k < w.size(); ++k) eu += continuation[k] * u.value(w[k]);
            const double sched_value = eu - model.cost(theta, continuation);
            const double br_value = best_response(w, theta, model, u).value;
            res.off_path_gap[i][j] = br_value - sched_value;
        }
    }
    return res;
}

double brute_force_ic(const Mechanism& mech, const CostModel& model, const UtilityFn& u) {
    const std::size_t m = mech.num_types();
    const auto types = mech.type_grid().points();
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        const double on_path = actual_on_path_utility(mech, i, model, u);
        for (std::size_t j = 0; j < m; ++j) {
            const double dev = best_response(mech.wage(j), types[i], model, u).value;
            worst = std::max(worst, dev - on_path);
        }
    }
    return worst;
}

GenSchedule populate_schedule(const Mechanism& mech, const CostModel& model, const UtilityFn& u) {
    GenSchedule sched(mech);
    const std::size_t m = mech.num_types();
    const auto types = mech.type_grid().points();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            sched.set(i, j, best_response(mech.wage(j), types[i], model, u).argmax_dist);
        }
    return sched;
}

namespace {

// Extreme-selection variant used when linear-family ties make the
// monotonicity integral selection-dependent.
GenSchedule populate_schedule_selection(const Mechanism& mech, const CostModel& model,
                                        const UtilityFn& u, bool take_largest, bool& any_tie) {
    GenSchedule sched(mech);
    const std::size_t m = mech.num_types();
    const auto types = mech.type_grid().points();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            BestResponse br = best_response_linear(mech.wage(j), types[i], model, u);
            if (br.tie_set.size() > 1) {
                any_tie = true;
                const std::size_t pick = take_largest ? br.tie_set.back() : br.tie_set.front();
                sched.set(i, j, make_dirac(mech.output_grid(), pick));
            } else {
                sched.set(i, j, br.argmax_dist);
            }
        }
    return sched;
}

}  // namespace

ICVerdict ICReport::four_condition_verdict() const {
    const ConditionVerdict all[] = {envelope_verdict, monotonicity_verdict, on_path_verdict,
                                    off_path_verdict};
    bool borderline = false;
    for (ConditionVerdict v : all) {
        if (v == ConditionVerdict::fail) return ICVerdict::not_ic;
        if (v == ConditionVerdict::borderline) borderline = true;
    }
    return borderline ? ICVerdict::indeterminate : ICVerdict::ic;
}

ICVerdict ICReport::brute_force_verdict(const VerifyTolerances& tol) const {
    if (brute_force_worst <= tol.brute_force) return ICVerdict::ic;
    if (brute_force_worst <= tol.borderline_factor * tol.brute_force) return ICVerdict::indeterminate;
    return ICVerdict::not_ic;
}

std::string ICReport::first_failing_condition() const {
    if (envelope_verdict == ConditionVerdict::fail) return "envelope";
    if (monotonicity_verdict == ConditionVerdict::fail) return "generalized monotonicity";
    if (on_path_verdict == ConditionVerdict::fail) return "on-path obedience";
    if (off_path_verdict == ConditionVerdict::fail) return "off-path obedience";
    return {};
}

ICReport verify_mechanism(const Mechanism& mech, const GenSchedule& sched, const CostModel& model,
                          const UtilityFn& u, const VerifyTolerances& tol) {
    ICReport report;

    report.envelope_residuals = check_envelope(mech, model);
    // Envelope band: curvature-aware quadrature estimate, since a promise
    // integrated exactly along a kinked recommendation path legitimately
    // deviates from the grid trapezoid by the local kink error.
    const auto kappa = kappa_path(mech, model);
    report.envelope_tolerance =
        std::max(1e-9, trapezoid_error_estimate(mech.type_grid().points(), kappa));
    double env_worst = 0.0;
    for (double r : report.envelope_residuals) env_worst = std::max(env_worst, std::fabs(r));
    report.envelope_verdict = classify(env_worst, report.envelope_tolerance, tol.borderline_factor);

    report.monotonicity_min = check_gen_monotonicity(mech, sched, model);
    // Monotonicity band: fixed in the scale of the integrand so a corrupted
    // (spiky) schedule cannot widen the band that is supposed to catch it.
    double kappa_scale = 0.0;
    for (double k : kappa) kappa_scale = std::max(kappa_scale, std::fabs(k));
    const double h = mech.type_grid().max_spacing();
    const double span = mech.type_grid().upper() - mech.type_grid().lower();
    report.monotonicity_tolerance =
        std::max(kappa_scale * span * h * h / 12.0, tol.obedience);
    report.monotonicity_min_low_selection = report.monotonicity_min;
    report.monotonicity_min_high_selection = report.monotonicity_min;
    if (model.family() == CostFamily::linear && mech.num_types() > 1) {
        bool any_tie = false;
        GenSchedule low = populate_schedule_selection(mech, model, u, false, any_tie);
        if (any_tie) {
            GenSchedule high = populate_schedule_selection(mech, model, u, true, any_tie);
            report.monotonicity_min_low_selection = check_gen_monotonicity(mech, low, model);
            report.monotonicity_min_high_selection = check_gen_monotonicity(mech, high, model);
            report.has_selection_range = true;
        }
    }
    report.monotonicity_verdict = classify(-report.monotonicity_min, report.monotonicity_tolerance,
                                           tol.borderline_factor);

    const ObedienceResult obed = check_obedience(mech, sched, model, u);
    report.on_path_inequality = obed.on_path_inequality;
    report.on_path_support_residual = obed.on_path_support_residual;
    report.off_path_gap = obed.off_path_gap;
    double on_worst = 0.0;
    for (std::size_t j = 0; j < obed.on_path_inequality.size(); ++j)
        on_worst = std::max({on_worst, obed.on_path_inequality[j], obed.on_path_support_residual[j]});
    report.on_path_verdict = classify(on_worst, tol.obedience, tol.borderline_factor);
    double off_worst = 0.0;
    for (const auto& row : obed.off_path_gap)
        for (double gp : row) off_worst = std::max(off_worst, gp);
    report.off_path_worst = off_worst;
    report.off_path_verdict = classify(off_worst, tol.obedience, tol.borderline_factor);

    report.brute_force_worst = brute_force_ic(mech, model, u);
    return report;
}

}  // namespace pact
