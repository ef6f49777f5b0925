#include <doctest.h>

#include <cmath>

#include "pact/ic_verify.hpp"
#include "pact/solver.hpp"
#include "pact/wage_builder.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

using namespace pact;

namespace {

// Two-point-output workbench: kappa of a point mass at the top equals 2.
struct Bench {
    OutputGrid grid{std::vector<double>{0.0, 2.0}};
    CostModel model = CostModel::linear(KernelFn::affine(1.0), grid);
    UtilityFn u = UtilityFn::linear();

    Mechanism constant_schedule(const TypeGrid& types, double kappa_level, bool consistent_promise) {
        const std::size_t m = types.size();
        std::vector<WageSchedule> wages;
        std::vector<Dist> recs;
        std::vector<double> promised(m, 0.0);
        const Dist rec = kappa_level == 0.0 ? make_dirac(grid, 0) : make_dirac(grid, 1);
        for (std::size_t j = 0; j < m; ++j) {
            if (consistent_promise) promised[j] = kappa_level * (types[j] - types[0]);
            wages.push_back(build_wage(types[j], rec, promised[j], model, u));
            recs.push_back(rec);
        }
        return Mechanism(grid, types, std::move(wages), std::move(recs), std::move(promised));
    }
};

}  // namespace

TEST_SUITE("ic-verify") {

TEST_CASE("envelope residuals") {
    Bench bench;
    TypeGrid types = TypeGrid::linspace(0.2, 0.8, 7);

    SUBCASE("constant path with consistent promises is exact") {
        const Mechanism mech = bench.constant_schedule(types, 2.0, true);
        for (double r : check_envelope(mech, bench.model)) CHECK(r == doctest::Approx(0.0));
    }
    SUBCASE("missing information rent turns residuals negative") {
        const Mechanism mech = bench.constant_schedule(types, 2.0, false);
        const auto residuals = check_envelope(mech, bench.model);
        CHECK(residuals[0] == 0.0);
        for (std::size_t j = 1; j < residuals.size(); ++j)
            CHECK(residuals[j] == doctest::Approx(-2.0 * (types[j] - types[0])));
    }
    SUBCASE("solver output satisfies the envelope to rounding") {
        const auto inst = testing::random_solver_instance(4);
        const SolveResult solved =
            solve_degenerate(inst.model, inst.F, inst.types, inst.u, SolverOptions{});
        for (double r : check_envelope(solved.mechanism, inst.model))
            CHECK(std::fabs(r) < 1e-12);
    }
}

TEST_CASE("generalized monotonicity integral") {
    Bench bench;
    TypeGrid types({0.3, 0.6});

    SUBCASE("nondecreasing kappa under contractible continuation is nonnegative") {
        // Low type at the bottom output, high type at the top.
        std::vector<Dist> recs{make_dirac(bench.grid, 0), make_dirac(bench.grid, 1)};
        std::vector<WageSchedule> wages{
            build_wage(types[0], recs[0], 0.0, bench.model, bench.u),
            build_wage(types[1], recs[1], 0.0, bench.model, bench.u)};
        Mechanism mech(bench.grid, types, wages, recs, {0.0, 0.0});
        GenSchedule sched(mech);
        // Contractible actions: the continuation equals the reported type's
        // recommendation.
        sched.set(0, 1, recs[1]);
        sched.set(1, 0, recs[0]);
        CHECK(check_gen_monotonicity(mech, sched, bench.model) >= 0.0);
    }

    SUBCASE("decreasing kappa is caught, hand-computed minimum") {
        std::vector<Dist> recs{make_dirac(bench.grid, 1), make_dirac(bench.grid, 0)};
        std::vector<WageSchedule> wages{
            build_wage(types[0], recs[0], 0.0, bench.model, bench.u),
            build_wage(types[1], recs[1], 0.0, bench.model, bench.u)};
        Mechanism mech(bench.grid, types, wages, recs, {0.0, 0.0});
        GenSchedule sched(mech);
        sched.set(0, 1, recs[1]);
        sched.set(1, 0, recs[0]);
        // Pair (true=high, report=low): trapezoid of [kappa_t - kappa_low]
        // = 0.5 * ((2-2) + (0-2)) * 0.3 = -0.3.
        CHECK(check_gen_monotonicity(mech, sched, bench.model) == doctest::Approx(-0.3));
    }

    SUBCASE("unset cells raise a pointer to populate_schedule") {
        const Mechanism mech = bench.constant_schedule(types, 2.0, true);
        GenSchedule sched(mech);
        CHECK_THROWS_WITH_AS(check_gen_monotonicity(mech, sched, bench.model),
                             doctest::Contains("populate"), Error);
    }
}

TEST_CASE("obedience residuals") {
    const auto inst = testing::random_solver_instance(6);
    const SolveResult solved =
        solve_degenerate(inst.model, inst.F, inst.types, inst.u, SolverOptions{});
    const Mechanism& mech = solved.mechanism;

    SUBCASE("solver wages satisfy both branches") {
        const auto res = check_obedience(mech, solved.schedule, inst.model, inst.u);
        for (std::size_t j = 0; j < mech.num_types(); ++j) {
            CHECK(res.on_path_inequality[j] <= 1e-10);
            CHECK(res.on_path_support_residual[j] <= 1e-10);
        }
        for (const auto& row : res.off_path_gap)
            for (double g : row) CHECK(g <= 1e-8);
    }

    SUBCASE("a raised off-support wage is flagged at the right type") {
        const std::size_t j = mech.num_types() / 2;
        const auto supp = mech.recommendation(j).support();
        std::size_t off = mech.output_grid().size() - 1;
        if (off == supp.front()) off = 0;
        const auto c = inst.model.gateaux(mech.type_grid()[j], mech.recommendation(j));
        const double constant = mech.promised_utility(j) +
                                inst.model.cost(mech.type_grid()[j], mech.recommendation(j)) -
                                expectation(mech.recommendation(j), c);
        std::vector<double> pay(mech.wage(j).values().begin(), mech.wage(j).values().end());
        pay[off] = inst.u.inverse(c[off] + constant) + 1.0;
        const Mechanism corrupted = mech.with_wage(j, WageSchedule(pay));

        const auto res = check_obedience(corrupted, solved.schedule, inst.model, inst.u);
        CHECK(res.on_path_inequality[j] > 0.5);
        for (std::size_t k = 0; k < mech.num_types(); ++k)
            if (k != j) CHECK(res.on_path_inequality[k] <= 1e-10);
    }
}

TEST_CASE("brute force deviation scan") {
    SUBCASE("single type reduces to on-path obedience") {
        Bench bench;
        TypeGrid one({0.5});
        const Mechanism mech = bench.constant_schedule(one, 2.0, true);
        CHECK(brute_force_ic(mech, bench.model, bench.u) <= 1e-12);

        std::vector<double> pay(mech.wage(0).values().begin(), mech.wage(0).values().end());
        pay[0] += 1.0;  // out-of-recommendation point becomes tempting
        const Mechanism bad = mech.with_wage(0, WageSchedule(pay));
        CHECK(brute_force_ic(bad, bench.model, bench.u) > 0.5);
    }

    SUBCASE("solver output is incentive compatible; a raised top wage is not") {
        const auto inst = testing::random_solver_instance(8);
        const SolveResult solved =
            solve_degenerate(inst.model, inst.F, inst.types, inst.u, SolverOptions{});
        CHECK(brute_force_ic(solved.mechanism, inst.model, inst.u) <= 1e-6);

        const std::size_t top = solved.mechanism.num_types() - 1;
        std::vector<double> pay(solved.mechanism.wage(top).values().begin(),
                                solved.mechanism.wage(top).values().end());
        pay.back() += 1.0;
        const Mechanism bad = solved.mechanism.with_wage(top, WageSchedule(pay));
        CHECK(brute_force_ic(bad, inst.model, inst.u) > 1e-3);
    }
}

TEST_CASE("populating the continuation schedule") {
    const auto inst = testing::random_solver_instance(10);
    const SolveResult solved =
        solve_degenerate(inst.model, inst.F, inst.types, inst.u, SolverOptions{});
    const Mechanism& mech = solved.mechanism;
    const GenSchedule sched = populate_schedule(mech, inst.model, inst.u);
    const std::size_t m = mech.num_types();

    // Point recommendations with punishment wages: any deviator follows the
    // reported type's own recommendation.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j)
                CHECK(sched.at(i, i) == mech.recommendation(i));
            else
                CHECK(sched.at(i, j) == mech.recommendation(j));
        }
}

TEST_CASE("two-point continuations match a scan of the deviation objective") {
    OutputGrid g({0.0, 1.0});
    const CostModel model = CostModel::composite(KernelFn::affine(1.0), OuterFn::power(2.0), g);
    const UtilityFn u = UtilityFn::linear();
    TypeGrid types({0.3, 0.7});
    const TypeDistribution F = TypeDistribution::uniform(0.3, 0.7);
    const SolveResult solved = solve_binary(model, F, types, u, SolverOptions{});

    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const double theta = types[i];
            const WageSchedule& w = solved.mechanism.wage(j);
            double best_p = 0.0, best_val = -1e300;
            for (int k = 0; k <= 100000; ++k) {
                const double p = k / 100000.0;
                const double val = w[0] + p * (w[1] - w[0]) - (1.0 - theta) * p * p;
                if (val > best_val) {
                    best_val = val;
                    best_p = p;
                }
            }
            CHECK(solved.schedule.at(i, j)[1] == doctest::Approx(best_p).epsilon(1e-4));
        }
}

TEST_CASE("negative suite: every targeted corruption is caught by its condition and by brute force") {
    const auto inst = testing::random_solver_instance(12);
    REQUIRE(inst.pipeline == Pipeline::degenerate);
    const SolveResult solved =
        solve_degenerate(inst.model, inst.F, inst.types, inst.u, SolverOptions{});
    const VerifyTolerances tol;

    const ICReport clean =
        verify_mechanism(solved.mechanism, solved.schedule, inst.model, inst.u, tol);
    REQUIRE(clean.four_condition_verdict() == ICVerdict::ic);
    REQUIRE(clean.brute_force_verdict(tol) == ICVerdict::ic);

    for (const auto kind : {testing::Corruption::envelope, testing::Corruption::monotonicity,
                            testing::Corruption::on_path, testing::Corruption::off_path}) {
        const auto corrupted = testing::corrupt(solved, inst, kind);
        REQUIRE(corrupted.has_value());
        const ICReport report =
            verify_mechanism(corrupted->mech, corrupted->sched, inst.model, inst.u, tol);
        CAPTURE(static_cast<int>(kind));
        switch (kind) {
            case testing::Corruption::envelope:
                CHECK(report.envelope_verdict == ConditionVerdict::fail);
                CHECK(report.monotonicity_verdict == ConditionVerdict::pass);
                CHECK(report.on_path_verdict == ConditionVerdict::pass);
                CHECK(report.off_path_verdict == ConditionVerdict::pass);
                break;
            case testing::Corruption::monotonicity:
                CHECK(report.monotonicity_verdict == ConditionVerdict::fail);
                CHECK(report.envelope_verdict == ConditionVerdict::pass);
                CHECK(report.on_path_verdict == ConditionVerdict::pass);
                CHECK(report.off_path_verdict == ConditionVerdict::pass);
                break;
            case testing::Corruption::on_path:
                CHECK(report.on_path_verdict == ConditionVerdict::fail);
                CHECK(report.envelope_verdict == ConditionVerdict::pass);
                CHECK(report.monotonicity_verdict == ConditionVerdict::pass);
                break;
            case testing::Corruption::off_path:
                CHECK(report.off_path_verdict == ConditionVerdict::fail);
                CHECK(report.envelope_verdict == ConditionVerdict::pass);
                CHECK(report.monotonicity_verdict == ConditionVerdict::pass);
                break;
        }
        CHECK(report.brute_force_worst > tol.brute_force);
    }
}

TEST_CASE("tied best responses report a selection range for monotonicity") {
    // A wage whose slope matches the low type's marginal cost leaves that
    // deviator indifferent across every output, so the monotonicity integral
    // depends on the selection; the report carries both extremes.
    Bench bench;
    TypeGrid types({0.3, 0.6});
    const Dist rec = make_dirac(bench.grid, 1);
    const WageSchedule w_low = build_wage(types[0], rec, 0.0, bench.model, bench.u);
    const WageSchedule w_high({0.1, 0.7 * 2.0 + 0.1});  // low type's slope, shifted
    const double promised_high = (0.7 * 2.0 + 0.1) - (1.0 - types[1]) * 2.0;
    Mechanism mech(bench.grid, types, {w_low, w_high}, {rec, rec}, {0.0, promised_high});
    const GenSchedule sched = populate_schedule(mech, bench.model, bench.u);

    // The low type misreporting high is exactly indifferent.
    const BestResponse br = best_response_linear(w_high, types[0], bench.model, bench.u);
    REQUIRE(br.tie_set.size() == 2);

    const ICReport report = verify_mechanism(mech, sched, bench.model, bench.u);
    CHECK(report.has_selection_range);
    CHECK(report.monotonicity_min_low_selection <=
          report.monotonicity_min_high_selection + 1e-12);
    CHECK(report.monotonicity_min >= report.monotonicity_min_low_selection - 1e-12);
    CHECK(report.monotonicity_min <= report.monotonicity_min_high_selection + 1e-12);
}

TEST_CASE("four-condition verdict agrees with brute force on sampled instances") {
    const VerifyTolerances tol;
    int contradictions = 0;
    for (std::uint64_t seed = 20; seed < 32; ++seed) {
        const auto inst = testing::random_solver_instance(seed);
        const SolveResult solved =
            inst.pipeline == Pipeline::binary
                ? solve_binary(inst.model, inst.F, inst.types, inst.u, SolverOptions{})
                : solve_degenerate(inst.model, inst.F, inst.types, inst.u, SolverOptions{});

        ICReport report;
        if (seed % 2 == 0) {
            report = verify_mechanism(solved.mechanism, solved.schedule, inst.model, inst.u, tol);
        } else {
            const auto kind = static_cast<testing::Corruption>(seed % 4);
            const auto corrupted = testing::corrupt(solved, inst, kind);
            if (!corrupted) continue;
            report = verify_mechanism(corrupted->mech, corrupted->sched, inst.model, inst.u, tol);
        }
        const ICVerdict four = report.four_condition_verdict();
        const ICVerdict brute = report.brute_force_verdict(tol);
        if (four != ICVerdict::indeterminate && brute != ICVerdict::indeterminate && four != brute)
            ++contradictions;
    }
    CHECK(contradictions == 0);
}

}  // TEST_SUITE
