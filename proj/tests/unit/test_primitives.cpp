#include <doctest.h>

#include <cmath>
#include <random>

#include "pact/cost_model.hpp"
#include "pact/type_distribution.hpp"
#include "support/instances.hpp"

using namespace pact;

TEST_SUITE("primitives") {

TEST_CASE("utility inverse identity on probe payments") {
    const UtilityFn kinds[] = {UtilityFn::linear(), UtilityFn::crra(0.5), UtilityFn::crra(2.0),
                               UtilityFn::cara(0.8), UtilityFn::log_shifted(1.0)};
    for (const auto& u : kinds) {
        for (int k = 0; k < 100; ++k) {
            const double w = 0.05 + 0.05 * k;  // positive probes cover every domain
            REQUIRE(u.in_domain(w));
            CHECK(u.inverse(u.value(w)) == doctest::Approx(w).epsilon(1e-10));
        }
    }
}

TEST_CASE("utility shape: increasing and weakly concave") {
    const UtilityFn kinds[] = {UtilityFn::linear(), UtilityFn::crra(0.5), UtilityFn::cara(1.2),
                               UtilityFn::log_shifted(0.5)};
    for (const auto& u : kinds) {
        for (int k = 0; k < 50; ++k) {
            const double w = 0.1 + 0.1 * k;
            CHECK(u.d1(w) > 0.0);
            CHECK(u.d2(w) <= 1e-15);
        }
    }
}

TEST_CASE("utility domain errors") {
    const UtilityFn crra = UtilityFn::crra(0.5);
    CHECK_THROWS_AS(crra.value(-1.0), DomainError);
    CHECK_THROWS_AS(crra.inverse(-10.0), DomainError);  // below the range of u
    const UtilityFn cara = UtilityFn::cara(1.0);
    CHECK_THROWS_AS(cara.inverse(2.0), DomainError);    // above the cara range bound 1/alpha
    CHECK_THROWS_AS(UtilityFn::crra(1.0), Error);
}

TEST_CASE("kernel kinds and derivatives") {
    const KernelFn p = KernelFn::power(2.0, 2.0, 1.0);
    CHECK(p.value(3.0) == doctest::Approx(19.0));
    CHECK(p.d1(3.0) == doctest::Approx(12.0));
    CHECK(p.d2(3.0) == doctest::Approx(4.0));

    const KernelFn a = KernelFn::affine(1.5, 0.5);
    CHECK(a.value(2.0) == doctest::Approx(3.5));
    CHECK(a.d1(2.0) == doctest::Approx(1.5));
    CHECK(a.d2(2.0) == 0.0);

    const KernelFn e = KernelFn::exponential(1.0, 1.0, -1.0);
    CHECK(e.value(0.0) == doctest::Approx(0.0));
    CHECK(e.d1(0.0) == doctest::Approx(1.0));

    const KernelFn t = KernelFn::table({0.0, 1.0, 2.0}, {0.0, 1.0, 3.0});
    CHECK(t.value(0.5) == doctest::Approx(0.5));
    CHECK(t.value(1.5) == doctest::Approx(2.0));
    CHECK(t.d1(0.5) == doctest::Approx(1.0));
    CHECK(t.d1(1.0) == doctest::Approx(2.0));  // right slope at the breakpoint
    CHECK(t.d1(2.0) == doctest::Approx(2.0));  // left slope at the top
    CHECK(t.d2(1.5) == 0.0);

    OutputGrid grid({0.0, 0.5, 1.0});
    CHECK(kernel_convex_on(KernelFn::power(1.0, 2.0), grid));
    CHECK_FALSE(kernel_concave_on(KernelFn::power(1.0, 2.0), grid));
    OutputGrid pos_grid({0.1, 0.5, 1.0});
    CHECK(kernel_concave_on(KernelFn::power(1.0, 0.5), pos_grid));
    CHECK(kernel_convex_on(KernelFn::affine(1.0), grid));
    CHECK(kernel_concave_on(KernelFn::affine(1.0), grid));
}

TEST_CASE("outer kinds") {
    const OuterFn id = OuterFn::identity();
    CHECK(id.value(0.7) == 0.7);
    CHECK(id.d1(0.7) == 1.0);
    CHECK_FALSE(id.strictly_convex());

    const OuterFn sq = OuterFn::power(2.0);
    CHECK(sq.value(0.5) == doctest::Approx(0.25));
    CHECK(sq.d1(0.5) == doctest::Approx(1.0));
    CHECK(sq.strictly_convex());
    CHECK_NOTHROW(sq.require_convex_increasing_on(0.0, 1.0));

    const OuterFn ex = OuterFn::exponential(1.0, 1.0);
    CHECK(ex.value(0.0) == doctest::Approx(0.0));
    CHECK(ex.d1(0.0) == doctest::Approx(1.0));
    CHECK(ex.strictly_convex());

    CHECK_THROWS_AS(OuterFn::power(0.5), Error);
}

TEST_CASE("type distributions satisfy cdf endpoints and positive density") {
    const TypeDistribution dists[] = {TypeDistribution::uniform(0.2, 0.8),
                                      TypeDistribution::beta(2.0, 3.0, 0.2, 0.8),
                                      TypeDistribution::table({0.2, 0.5, 0.8}, {1.0, 2.0, 1.0})};
    for (const auto& F : dists) {
        CHECK(F.cdf(F.lower()) == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(F.cdf(F.upper()) == doctest::Approx(1.0).epsilon(1e-10));
        // Beta densities with shape > 1 vanish at the exact support edges, so
        // positivity is probed on the interior.
        for (int k = 1; k < 20; ++k) {
            const double theta = F.lower() + (F.upper() - F.lower()) * k / 20.0;
            CHECK(F.density(theta) > 0.0);
        }
        // cdf consistency with the density by fine quadrature.
        const int fine = 4000;
        double acc = 0.0, prev = F.density(F.lower());
        const double h = (F.upper() - F.lower()) / fine;
        for (int k = 1; k <= fine; ++k) {
            const double theta = F.lower() + h * k;
            const double f = F.density(theta);
            acc += 0.5 * (prev + f) * h;
            prev = f;
            if (k % 500 == 0) CHECK(F.cdf(theta) == doctest::Approx(acc).epsilon(1e-5));
        }
    }
}

TEST_CASE("cost evaluations") {
    OutputGrid g01({0.0, 1.0});
    const CostModel lin = CostModel::linear(KernelFn::affine(1.0), g01);
    CHECK(lin.cost(0.5, make_dirac(g01, 1)) == doctest::Approx(0.5));
    CHECK(lin.cost(0.5, make_dirac(g01, 0)) == doctest::Approx(0.0));  // z(x_1) = 0, K(0) = 0

    const CostModel comp = CostModel::composite(KernelFn::affine(1.0), OuterFn::power(2.0), g01);
    CHECK(comp.cost(0.0, Dist({0.5, 0.5})) == doctest::Approx(0.25));
    CHECK_THROWS_AS(lin.cost(1.5, make_dirac(g01, 0)), Error);
}

TEST_CASE("marginal cost vectors") {
    OutputGrid g({0.0, 0.5, 1.0});
    const CostModel lin = CostModel::linear(KernelFn::affine(1.0), g);
    const auto grad = lin.gateaux(0.25, make_dirac(g, 0));
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(grad[i] == doctest::Approx(0.75 * g[i]));

    OutputGrid g01({0.0, 1.0});
    const CostModel comp = CostModel::composite(KernelFn::affine(1.0), OuterFn::power(2.0), g01);
    const auto grad2 = comp.gateaux(0.0, Dist({0.5, 0.5}));  // K'(0.5) = 1
    CHECK(grad2[0] == doctest::Approx(0.0));
    CHECK(grad2[1] == doctest::Approx(1.0));

    const auto grad3 = comp.gateaux(1.0 - 1e-12, Dist({0.5, 0.5}));
    for (double v : grad3) CHECK(std::fabs(v) < 1e-11);
}

TEST_CASE("type derivative of the cost is exact") {
    OutputGrid g01({0.0, 1.0});
    const CostModel lin = CostModel::linear(KernelFn::affine(1.0), g01);
    CHECK(lin.dcost_dtheta(0.4, make_dirac(g01, 1)) == doctest::Approx(-1.0));
    CHECK(lin.dcost_dtheta(0.4, make_dirac(g01, 0)) == doctest::Approx(0.0));

    const CostModel comp = CostModel::composite(KernelFn::affine(1.0), OuterFn::power(2.0), g01);
    CHECK(comp.dcost_dtheta(0.3, Dist({0.5, 0.5})) == doctest::Approx(-0.25));

    // Central finite difference in theta; the dependence is affine so the
    // residual is pure rounding.
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const Dist mu = testing::random_dist(rng, 2);
        const double theta = 0.2 + 0.03 * t;
        const double h = 1e-5;
        const double fd = (comp.cost(theta + h, mu) - comp.cost(theta - h, mu)) / (2.0 * h);
        CHECK(fd == doctest::Approx(comp.dcost_dtheta(theta, mu)).epsilon(1e-8));
    }
}

TEST_CASE("directional derivative matches finite differences") {
    std::mt19937_64 rng(17);
    OutputGrid g = OutputGrid::linspace(0.0, 1.0, 9);
    const CostModel models[] = {
        CostModel::linear(KernelFn::power(1.0, 2.0, 0.3), g),
        CostModel::composite(KernelFn::power(1.0, 2.0, 0.3), OuterFn::power(2.0), g),
        CostModel::composite(KernelFn::power(1.0, 2.0, 0.3), OuterFn::exponential(1.0), g)};
    int checked = 0;
    while (checked < 100) {
        const CostModel& model = models[checked % 3];
        const double theta = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
        const Dist mu = testing::random_dist(rng, g.size());
        const Dist nu = testing::random_dist(rng, g.size());
        double direction = 0.0;
        {
            const auto grad = model.gateaux(theta, mu);
            for (std::size_t i = 0; i < g.size(); ++i) direction += (nu[i] - mu[i]) * grad[i];
        }
        if (std::fabs(direction) < 1e-3) continue;  // keep the relative comparison meaningful
        ++checked;
        const double eps = 1e-5;
        const double fd = (model.cost(theta, mix(mu, nu, eps)) - model.cost(theta, mu)) / eps;
        CHECK(std::fabs(fd - direction) / std::fabs(direction) < 1e-3);
    }
}

TEST_CASE("cost respects first-order stochastic dominance") {
    std::mt19937_64 rng(23);
    OutputGrid g = OutputGrid::linspace(0.0, 1.2, 7);
    const CostModel model = CostModel::composite(KernelFn::power(1.0, 1.7, 0.1),
                                                 OuterFn::power(2.0), g);
    for (int t = 0; t < 200; ++t) {
        auto [lower, upper] = testing::random_fosd_pair(rng, g.size());
        const double theta = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
        CHECK(model.cost(theta, upper) >= model.cost(theta, lower) - 1e-12);
    }
}

TEST_CASE("cost is convex along segments") {
    std::mt19937_64 rng(29);
    OutputGrid g = OutputGrid::linspace(0.0, 1.0, 6);
    const CostModel model =
        CostModel::composite(KernelFn::affine(1.0), OuterFn::exponential(1.3), g);
    for (int t = 0; t < 100; ++t) {
        const Dist a = testing::random_dist(rng, g.size());
        const Dist b = testing::random_dist(rng, g.size());
        const double theta = 0.4;
        const double mid = model.cost(theta, mix(a, b, 0.5));
        CHECK(mid <= 0.5 * model.cost(theta, a) + 0.5 * model.cost(theta, b) + 1e-12);
    }
}

TEST_CASE("virtual value") {
    const TypeDistribution u01 = TypeDistribution::uniform(0.0, 1.0);
    CHECK(virtual_value(u01, 0.5) == doctest::Approx(1.0));

    const TypeDistribution F = TypeDistribution::uniform(0.2, 0.8);
    CHECK(virtual_value(F, 0.5) == doctest::Approx(0.8));
    CHECK(virtual_value(F, 0.8) == doctest::Approx(1.0 - 0.8));
}

TEST_CASE("regularity diagnostics") {
    TypeGrid grid = TypeGrid::linspace(0.2, 0.8, 25);

    const auto uniform_report = check_regularity(TypeDistribution::uniform(0.2, 0.8), grid);
    CHECK(uniform_report.virtual_value_monotone);
    CHECK(uniform_report.gap_factor_monotone);
    CHECK(uniform_report.regular());
    for (std::size_t j = 0; j < grid.size(); ++j)
        CHECK(uniform_report.virtual_values[j] == doctest::Approx(1.8 - 2.0 * grid[j]));

    // A sharp density dip makes the virtual value locally increasing.
    const TypeDistribution dip =
        TypeDistribution::table({0.2, 0.45, 0.5, 0.55, 0.8}, {1.0, 1.0, 0.08, 1.0, 1.0});
    const auto dip_report = check_regularity(dip, grid);
    CHECK_FALSE(dip_report.regular());
    CHECK_FALSE(dip_report.virtual_violations.empty());
    CHECK_FALSE(dip_report.gap_violations.empty());
}

TEST_CASE("curvature dominance condition") {
    OutputGrid grid = OutputGrid::linspace(0.1, 1.1, 21);
    const KernelFn concave = KernelFn::power(1.0, 0.5, -std::sqrt(0.1));  // vanishes at x_1
    const KernelFn affine = KernelFn::affine(1.0, -0.1);                  // vanishes at x_1

    CHECK(curvature_condition_holds(UtilityFn::linear(), concave, 1.0, 1.0, grid));
    CHECK_FALSE(curvature_condition_holds(UtilityFn::crra(0.9), affine, 1.0, 1.0, grid));

    // Direct evaluation of both sides as an independent check.
    const UtilityFn u = UtilityFn::crra(0.5);
    bool expected = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const double z = concave.value(x), zp = concave.d1(x), zpp = concave.d2(x);
        const double arg = z + 1.0;
        const double up = u.d1(arg), upp = u.d2(arg);
        if (-zpp / zp < (-upp / up) * (zp / up) * (zp / up) - 1e-12) expected = false;
    }
    CHECK(curvature_condition_holds(u, concave, 1.0, 1.0, grid) == expected);

    CHECK_THROWS_AS(curvature_condition_holds(u, concave, -1.0, 1.0, grid), Error);
    CHECK_THROWS_AS(curvature_condition_holds(u, KernelFn::affine(1.0, 5.0), 1.0, 1.0, grid), Error);
}

}  // TEST_SUITE
