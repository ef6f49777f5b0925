#include "pact/solver.hpp"

#include <algorithm>
#include <cmath>

namespace pact {

namespace {

bool kappa_path_monotone(const std::vector<double>& kappa) {
    for (std::size_t j = 0; j + 1 < kappa.size(); ++j)
        if (kappa[j + 1] < kappa[j] - 1e-12 * (1.0 + std::fabs(kappa[j]))) return false;
    return true;
}

RevenuePair revenue_impl(const Mechanism& mech, const TypeDistribution& F, const CostModel& model,
                         const UtilityFn& u) {
    const std::size_t m = mech.num_types();
    const auto types = mech.type_grid().points();
    const auto x = mech.output_grid().points();

    RevenuePair out;
    if (m == 1) {
        // Degenerate type space: the static contracting problem, no
        // information rent term and nothing to integrate.
        const Dist& rec = mech.recommendation(0);
        const WageSchedule& w = mech.wage(0);
        for (std::size_t i = 0; i < x.size(); ++i) out.direct += rec[i] * (x[i] - w[i]);
        out.quad_tolerance = 1e-12 * (1.0 + std::fabs(out.direct));
        if (u.kind() == UtilityKind::linear) {
            double ex = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) ex += rec[i] * x[i];
            out.virtual_form =
                ex - (1.0 - types[0]) * model.kappa(rec) - mech.promised_utility(0);
            out.difference = out.direct - *out.virtual_form;
        }
        return out;
    }

    std::vector<double> direct_integrand(m), virtual_integrand(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double theta = types[j];
        const double f = F.density(theta);
        const Dist& rec = mech.recommendation(j);
        const WageSchedule& w = mech.wage(j);
        double net = 0.0, ex = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            net += rec[i] * (x[i] - w[i]);
            ex += rec[i] * x[i];
        }
        direct_integrand[j] = f * net;
        virtual_integrand[j] = f * (ex - virtual_value(F, theta) * model.kappa(rec));
    }
    out.direct = trapezoid(types, direct_integrand);
    out.quad_tolerance = trapezoid_error_estimate(types, direct_integrand);
    if (u.kind() == UtilityKind::linear) {
        out.virtual_form = trapezoid(types, virtual_integrand) - mech.promised_utility(0);
        out.difference = out.direct - *out.virtual_form;
        out.quad_tolerance += trapezoid_error_estimate(types, virtual_integrand);
    }
    return out;
}

struct CornerAnchor {
    double theta = 0.0;  // type whose first-order condition pins the shared contract
    double rent = 0.0;   // information rent at that type (net of the floor utility)
};

struct PipelineParts {
    std::vector<Dist> recommendations;
    std::vector<double> kappa;          // per type
    std::vector<bool> corner;
    std::vector<double> solved_p;       // binary pipeline only
    std::vector<double> rent_override;  // exact rent prefix when the path kinks
    std::optional<CornerAnchor> bottom_anchor;  // shared contract of the p = 0 block
    std::optional<CornerAnchor> top_anchor;     // shared contract of the p = 1 block
};

SolveResult assemble(PipelineParts parts, const CostModel& model, const TypeDistribution& F,
                     const TypeGrid& types, const UtilityFn& u, const SolverOptions& options,
                     bool binary_pipeline) {
    const std::size_t m = types.size();
    const auto rents = parts.rent_override.empty() ? trapezoid_prefix(types.points(), parts.kappa)
                                                   : parts.rent_override;
    std::vector<double> promised(m);
    for (std::size_t j = 0; j < m; ++j) promised[j] = options.v_lower + rents[j];

    std::vector<WageSchedule> wages;
    wages.reserve(m);
    if (binary_pipeline && u.kind() == UtilityKind::linear) {
        // Corner-pooled types share one contract (equal probabilities force
        // equal wages under truthtelling), anchored at the exact type where
        // the probability path meets the corner: that wage gap keeps every
        // pooled type obedient at the corner without rewarding misreports
        // from the interior region.
        for (std::size_t j = 0; j < m; ++j) {
            if (parts.solved_p[j] == 0.0 && parts.bottom_anchor) {
                wages.push_back(binary_wages(parts.bottom_anchor->theta, 0.0,
                                             options.v_lower + parts.bottom_anchor->rent, model, u));
            } else if (parts.solved_p[j] == 1.0 && parts.top_anchor) {
                wages.push_back(binary_wages(parts.top_anchor->theta, 1.0,
                                             options.v_lower + parts.top_anchor->rent, model, u));
            } else {
                wages.push_back(binary_wages(types[j], parts.solved_p[j], promised[j], model, u));
            }
        }
    } else {
        // A single menu-wide punishment level keeps pooled types on
        // identical contracts.
        std::optional<double> floor;
        if (options.wage_mode == WageMode::punish_off_support) {
            std::vector<double> all_payments;
            for (std::size_t j = 0; j < m; ++j) {
                const WageSchedule formula = build_wage(types[j], parts.recommendations[j], promised[j],
                                                        model, u, WageMode::equality_everywhere);
                all_payments.insert(all_payments.end(), formula.values().begin(), formula.values().end());
            }
            floor = punishment_floor(all_payments, u);
        }
        for (std::size_t j = 0; j < m; ++j) {
            WageSchedule w = build_wage(types[j], parts.recommendations[j], promised[j], model, u,
                                        options.wage_mode, floor);
            wages.push_back(options.monotonize_wages ? monotonize(w) : w);
        }
    }

    Mechanism mech(model.grid(), types, std::move(wages), std::move(parts.recommendations),
                   std::move(promised));
    GenSchedule sched = populate_schedule(mech, model, u);

    SolveResult result{std::move(mech),
                       std::move(sched),
                       {},
                       check_regularity(F, types),
                       std::move(parts.corner),
                       std::move(parts.solved_p),
                       kappa_path_monotone(parts.kappa),
                       std::nullopt};
    result.revenue = revenue_impl(result.mechanism, F, model, u);
    if (!result.regularity.regular() || !result.allocation_monotone)
        result.ic_report = verify_mechanism(result.mechanism, result.schedule, model, u);
    return result;
}

}  // namespace

SolveResult solve_degenerate(const CostModel& model, const TypeDistribution& F, const TypeGrid& types,
                             const UtilityFn& u, const SolverOptions& options) {
    if (u.kind() != UtilityKind::linear)
        throw Error("solve_degenerate: linear payment utility required");
    if (!kernel_convex_on(model.kernel(), model.grid()))
        throw Error("solve_degenerate: kernel must be convex across the output grid");
    if (options.v_lower < 0.0) throw Error("solve_degenerate: promised utility of the lowest type must be >= 0");

    const auto x = model.grid().points();
    const auto z = model.z_values();
    const std::size_t n = x.size(), m = types.size();

    PipelineParts parts;
    parts.recommendations.reserve(m);
    parts.kappa.resize(m);
    parts.corner.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double phi = virtual_value(F, types[j]);
        std::size_t best = 0;
        double best_val = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const double val = x[i] - phi * model.kappa_of_mean(z[i]);
            if (val >= best_val) {
                best_val = val;
                best = i;
            }
        }
        parts.recommendations.push_back(make_dirac(model.grid(), best));
        parts.kappa[j] = model.kappa_of_mean(z[best]);
        parts.corner[j] = (best == 0 || best == n - 1);
    }
    return assemble(std::move(parts), model, F, types, u, options, /*binary_pipeline=*/false);
}

SolveResult solve_binary(const CostModel& model, const TypeDistribution& F, const TypeGrid& types,
                         const UtilityFn& u, const SolverOptions& options) {
    if (model.family() != CostFamily::composite)
        throw Error("solve_binary: composite cost family required");
    if (u.kind() != UtilityKind::linear) throw Error("solve_binary: linear payment utility required");
    if (!kernel_concave_on(model.kernel(), model.grid()))
        throw Error("solve_binary: kernel must be concave across the output grid");
    if (options.v_lower < 0.0) throw Error("solve_binary: promised utility of the lowest type must be >= 0");

    const auto x = model.grid().points();
    const auto z = model.z_values();
    const std::size_t n = x.size(), m = types.size();
    const double dz = z.back() - z.front();
    const double ratio = (x.back() - x.front()) / dz;
    const OuterFn& K = model.outer();

    PipelineParts parts;
    parts.recommendations.reserve(m);
    parts.kappa.resize(m);
    parts.corner.resize(m);
    parts.solved_p.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double phi = virtual_value(F, types[j]);
        const auto foc = [&](double p) { return ratio - phi * K.d1(z.front() + p * dz); };
        double p;
        bool corner;
        if (!K.strictly_convex()) {
            // Constant marginal cost: bang-bang solution by sign.
            p = foc(0.0) >= 0.0 ? 1.0 : 0.0;
            corner = true;
        } else if (foc(0.0) <= 0.0) {
            p = 0.0;
            corner = true;
        } else if (foc(1.0) >= 0.0) {
            p = 1.0;
            corner = true;
        } else {
            double lo = 0.0, hi = 1.0;  // foc(lo) > 0 > foc(hi); foc nonincreasing
            while (hi - lo > options.bisection_tol) {
                const double mid = 0.5 * (lo + hi);
                (foc(mid) > 0.0 ? lo : hi) = mid;
            }
            p = 0.5 * (lo + hi);
            corner = false;
        }
        std::vector<double> mass(n, 0.0);
        mass.front() = 1.0 - p;
        mass.back() += p;
        parts.recommendations.push_back(Dist(std::move(mass)));
        parts.kappa[j] = K.value(z.front() + p * dz);
        parts.corner[j] = corner;
        parts.solved_p[j] = p;
    }

    // Rent prefix with corner-seam cells split at the exact transition type.
    // A plain cell trapezoid overshoots across the kink where the probability
    // path leaves or enters a corner, and the overshoot becomes misreport
    // arbitrage at the first interior type.
    const auto g_bottom = [&](double t) { return ratio - virtual_value(F, t) * K.d1(z.front()); };
    const auto g_top = [&](double t) { return ratio - virtual_value(F, t) * K.d1(z.back()); };
    const auto bisect_root = [](auto&& g, double lo_t, double hi_t) {
        const bool lo_sign = g(lo_t) > 0.0;
        for (int it = 0; it < 200 && hi_t - lo_t > 1e-14; ++it) {
            const double mid = 0.5 * (lo_t + hi_t);
            ((g(mid) > 0.0) == lo_sign ? lo_t : hi_t) = mid;
        }
        return 0.5 * (lo_t + hi_t);
    };
    parts.rent_override.assign(m, 0.0);
    const double kappa_bottom = K.value(z.front());
    const double kappa_top = K.value(z.back());
    for (std::size_t j = 0; j + 1 < m; ++j) {
        const double t0 = types[j], t1 = types[j + 1];
        const bool leaves_bottom = parts.solved_p[j] == 0.0 && parts.solved_p[j + 1] > 0.0;
        const bool enters_top = parts.solved_p[j] < 1.0 && parts.solved_p[j + 1] == 1.0;
        double inc = 0.0;
        double left = t0;
        double left_kappa = parts.kappa[j];
        if (leaves_bottom) {
            const double seam = bisect_root(g_bottom, t0, t1);
            inc += kappa_bottom * (seam - t0);
            left = seam;
            left_kappa = kappa_bottom;
        }
        if (enters_top) {
            const double seam = bisect_root(g_top, left, t1);
            inc += 0.5 * (left_kappa + kappa_top) * (seam - left);
            inc += kappa_top * (t1 - seam);
        } else {
            inc += 0.5 * (left_kappa + parts.kappa[j + 1]) * (t1 - left);
        }
        parts.rent_override[j + 1] = parts.rent_override[j] + inc;
    }

    // Shared corner contracts are pinned at the seam type where the
    // probability path meets the corner (the whole grid block when the path
    // never leaves it).
    if (parts.solved_p.front() == 0.0) {
        CornerAnchor a;
        std::size_t j = 0;
        while (j + 1 < m && parts.solved_p[j + 1] == 0.0) ++j;
        if (j + 1 < m) {
            a.theta = bisect_root(g_bottom, types[j], types[j + 1]);
            a.rent = parts.rent_override[j] + kappa_bottom * (a.theta - types[j]);
        } else {
            a.theta = types[m - 1];
            a.rent = parts.rent_override[m - 1];
        }
        parts.bottom_anchor = a;
    }
    if (parts.solved_p.back() == 1.0) {
        CornerAnchor a;
        std::size_t j = m - 1;
        while (j > 0 && parts.solved_p[j - 1] == 1.0) --j;
        if (j > 0) {
            a.theta = bisect_root(g_top, types[j - 1], types[j]);
            a.rent = parts.rent_override[j] - kappa_top * (types[j] - a.theta);
        } else {
            a.theta = types[0];
            a.rent = 0.0;
        }
        parts.top_anchor = a;
    }
    return assemble(std::move(parts), model, F, types, u, options, /*binary_pipeline=*/true);
}

RevenuePair revenue(const Mechanism& mech, const TypeDistribution& F, const CostModel& model,
                    const UtilityFn& u) {
    return revenue_impl(mech, F, model, u);
}

Mechanism degenerate_transform(const Mechanism& mech, const GenSchedule& sched, const CostModel& model,
                               const UtilityFn& u) {
    if (sched.num_types() != mech.num_types()) throw Error("degenerate_transform: schedule size mismatch");
    if (!kernel_convex_on(model.kernel(), model.grid()))
        throw Error("degenerate_transform: kernel must be convex across the output grid");
    const auto z = model.z_values();
    const std::size_t m = mech.num_types();
    const auto types = mech.type_grid().points();

    std::vector<WageSchedule> wages;
    std::vector<Dist> recs;
    std::vector<double> promised(mech.promised_utilities().begin(), mech.promised_utilities().end());
    wages.reserve(m);
    recs.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double target = model.mean_kernel(mech.recommendation(j));
        // Snap to the nearest grid point (weakly) above in kernel space.
        const double snap_tol = 1e-9 * (1.0 + std::fabs(target));
        std::size_t k = z.size();
        for (std::size_t i = 0; i < z.size(); ++i)
            if (z[i] >= target - snap_tol) {
                k = i;
                break;
            }
        if (k == z.size()) throw Error("degenerate_transform: kernel target outside the grid range");
        Dist rec = make_dirac(mech.output_grid(), k);
        WageSchedule w =
            monotonize(build_wage(types[j], rec, promised[j], model, u, WageMode::punish_off_support));
        recs.push_back(std::move(rec));
        wages.push_back(std::move(w));
    }
    return Mechanism(mech.output_grid(), mech.type_grid(), std::move(wages), std::move(recs),
                     std::move(promised));
}

BinaryTransformResult binary_transform(const Mechanism& mech, const GenSchedule& sched,
                                       const CostModel& model, const UtilityFn& u) {
    if (sched.num_types() != mech.num_types()) throw Error("binary_transform: schedule size mismatch");
    const auto z = model.z_values();
    if (std::fabs(z.front()) > 1e-9)
        throw Error("binary_transform: kernel must vanish at the lowest output");
    if (!kernel_concave_on(model.kernel(), model.grid()))
        throw Error("binary_transform: kernel must be concave across the output grid");

    const std::size_t m = mech.num_types();
    const auto types = mech.type_grid().points();
    const OuterFn& K = model.outer();

    BinaryTransformResult out{mech, true, {}};
    out.a_values.resize(m);

    std::vector<WageSchedule> wages;
    std::vector<Dist> recs;
    std::vector<double> promised(mech.promised_utilities().begin(), mech.promised_utilities().end());
    wages.reserve(m);
    recs.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double mean_k = model.mean_kernel(mech.recommendation(j));
        const double A = (1.0 - types[j]) * K.d1(mean_k);
        const double B = promised[j] + (1.0 - types[j]) * (K.value(mean_k) - mean_k);
        out.a_values[j] = A;
        if (u.kind() != UtilityKind::linear) {
            // With a linear u the condition degenerates to concavity of the
            // kernel, already validated above.
            if (!(A > 0.0) || !(B > 0.0))
                throw Error("binary_transform: induced (A, B) not positive at type index " +
                            std::to_string(j));
            if (!curvature_condition_holds(u, model.kernel(), A, B, mech.output_grid()))
                throw Error("binary_transform: curvature condition fails at type index " +
                            std::to_string(j) + " (A=" + std::to_string(A) + ", B=" +
                            std::to_string(B) + ")");
        }

        const double p = std::clamp(mean_k / z.back(), 0.0, 1.0);
        std::vector<double> mass(z.size(), 0.0);
        mass.front() = 1.0 - p;
        mass.back() += p;
        Dist rec(std::move(mass));
        WageSchedule w = (u.kind() == UtilityKind::linear)
                             ? binary_wages(types[j], p, promised[j], model, u)
                             : build_wage(types[j], rec, promised[j], model, u,
                                          WageMode::equality_everywhere);
        recs.push_back(std::move(rec));
        wages.push_back(std::move(w));
    }
    for (std::size_t j = 0; j + 1 < m; ++j)
        if (out.a_values[j + 1] < out.a_values[j] - 1e-12 * (1.0 + std::fabs(out.a_values[j])))
            out.a_monotone = false;

    out.mechanism = Mechanism(mech.output_grid(), mech.type_grid(), std::move(wages), std::move(recs),
                              std::move(promised));
    return out;
}

}  // namespace pact
