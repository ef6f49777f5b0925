#include <doctest.h>

#include <cmath>
#include <random>

#include "pact/best_response.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

using namespace pact;

TEST_SUITE("best-response") {

TEST_CASE("linear family picks the best vertex") {
    OutputGrid g({0.0, 0.5, 1.0});
    const CostModel model = CostModel::linear(KernelFn::affine(1.0), g);
    const UtilityFn u = UtilityFn::linear();

    const BestResponse br = best_response_linear(WageSchedule({0.0, 0.2, 0.6}), 0.5, model, u);
    CHECK(br.value == doctest::Approx(0.1));
    CHECK(br.argmax_dist == make_dirac(g, 2));
    CHECK(br.tie_set == std::vector<std::size_t>{2});

    const BestResponse flat = best_response_linear(WageSchedule({0.3, 0.3, 0.3}), 0.5, model, u);
    CHECK(flat.argmax_dist == make_dirac(g, 0));

    // Exact tie between the first and last vertex.
    const BestResponse tie = best_response_linear(WageSchedule({0.0, 0.1, 0.5}), 0.5, model, u);
    CHECK(tie.tie_set == std::vector<std::size_t>{0, 2});
    CHECK(tie.argmax_dist == make_dirac(g, 2));
    CHECK(tie.value == doctest::Approx(0.0));
}

TEST_CASE("upper envelope keeps collinear points") {
    const std::vector<double> m{0.0, 0.5, 1.0};
    const std::vector<double> collinear{0.0, 0.5, 1.0};
    CHECK(upper_concave_envelope(m, collinear) == std::vector<std::size_t>{0, 1, 2});
    const std::vector<double> below{0.0, 0.2, 1.0};
    CHECK(upper_concave_envelope(m, below) == std::vector<std::size_t>{0, 2});
    const std::vector<double> concave{0.0, 0.8, 1.0};
    CHECK(upper_concave_envelope(m, concave) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("composite family reduces to the envelope problem") {
    OutputGrid g({0.0, 0.5, 1.0});
    const CostModel model = CostModel::composite(KernelFn::affine(1.0), OuterFn::power(2.0), g);
    const UtilityFn u = UtilityFn::linear();

    const BestResponse br = best_response_composite(WageSchedule({0.0, 1.0, 1.2}), 0.0, model, u);
    CHECK(br.value == doctest::Approx(0.75));
    CHECK(br.mean_kernel == doctest::Approx(0.5));
    CHECK(br.argmax_dist == make_dirac(g, 1));

    const BestResponse flat = best_response_composite(WageSchedule({0.4, 0.4, 0.4}), 0.3, model, u);
    CHECK(flat.argmax_dist == make_dirac(g, 0));
    CHECK(flat.mean_kernel == doctest::Approx(0.0));
}

TEST_CASE("two-point composite matches the interior first-order condition") {
    OutputGrid g({0.0, 1.0});
    const CostModel model = CostModel::composite(KernelFn::affine(1.0), OuterFn::power(2.0), g);
    const UtilityFn u = UtilityFn::linear();

    // u(w1) - u(w0) = (1-theta) K'(p) => p = gap / (2 (1-theta)).
    const double theta = 0.5, w0 = 0.1, w1 = 0.5;
    const BestResponse br = best_response_composite(WageSchedule({w0, w1}), theta, model, u);
    const double p_expected = (w1 - w0) / (2.0 * (1.0 - theta));
    CHECK(br.mean_kernel == doctest::Approx(p_expected).epsilon(1e-8));
    CHECK(br.argmax_dist[1] == doctest::Approx(p_expected).epsilon(1e-7));

    // Clipped case: a huge gap forces all mass up.
    const BestResponse clip = best_response_composite(WageSchedule({0.0, 5.0}), theta, model, u);
    CHECK(clip.argmax_dist[1] == doctest::Approx(1.0));
}

TEST_CASE("value dominates every degenerate distribution") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto inst = testing::random_composite_br_instance(seed);
        const BestResponse br = best_response(inst.wage, inst.theta, inst.model, inst.u);
        for (std::size_t i = 0; i < inst.wage.size(); ++i) {
            const double vertex = inst.u.value(inst.wage[i]) -
                                  inst.model.cost(inst.theta, make_dirac(inst.model.grid(), i));
            CHECK(br.value >= vertex - 1e-9);
        }
    }
}

TEST_CASE("oracle agrees with the vertex method on linear instances") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto inst = testing::random_linear_br_instance(seed);
        const BestResponse fast = best_response_linear(inst.wage, inst.theta, inst.model, inst.u);
        const double enumerated =
            testing::enumerate_vertex_value(inst.wage, inst.theta, inst.model, inst.u);
        CHECK(fast.value == enumerated);  // identical arithmetic
        const BestResponse oracle =
            best_response_oracle(inst.wage, inst.theta, inst.model, inst.u, 20001, seed);
        CHECK(std::fabs(fast.value - oracle.value) < 1e-9);
    }
}

TEST_CASE("oracle agrees with the envelope method on composite instances") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto inst = testing::random_composite_br_instance(seed);
        const BestResponse fast = best_response_composite(inst.wage, inst.theta, inst.model, inst.u);
        const BestResponse oracle =
            best_response_oracle(inst.wage, inst.theta, inst.model, inst.u, 20001, seed);
        CHECK(fast.value == doctest::Approx(oracle.value).epsilon(2e-6));
        CHECK(std::fabs(fast.value - oracle.value) < 1e-6);
    }
}

TEST_CASE("single feasible action oracle") {
    const std::vector<double> util{0.7};
    const std::vector<double> z{0.4};
    const BestResponse br =
        detail::simplex_ascent_oracle(util, z, 0.5, OuterFn::identity(), 101, 0, 1);
    CHECK(br.argmax_dist[0] == 1.0);
    CHECK(br.value == doctest::Approx(0.7 - 0.5 * 0.4));
}

TEST_CASE("optimal mean kernel value is nondecreasing in type") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 20; ++t) {
        const auto inst = testing::random_composite_br_instance(200 + t);
        double prev = -1.0;
        for (int k = 0; k <= 12; ++k) {
            const double theta = 0.1 + 0.07 * k;
            const BestResponse br = best_response_composite(inst.wage, theta, inst.model, inst.u);
            CHECK(br.mean_kernel >= prev - 1e-7);
            prev = br.mean_kernel;
        }
    }
}

TEST_CASE("dominated outputs carry no mass") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> wdist(0.0, 1.0);
    for (int t = 0; t < 40; ++t) {
        const auto inst = testing::random_composite_br_instance(400 + t);
        std::vector<double> pay(inst.wage.values().begin(), inst.wage.values().end());
        // Force a dominated point: pay at k is no better than at k-1.
        const std::size_t k = 1 + t % (pay.size() - 1);
        pay[k] = pay[k - 1] - 0.1 * wdist(rng);
        if (!inst.u.in_domain(pay[k])) continue;
        const WageSchedule w{pay};

        for (const double theta : {0.2, 0.5, 0.8}) {
            const BestResponse br = best_response(w, theta, inst.model, inst.u);
            CHECK(br.argmax_dist[k] == 0.0);
            const BestResponse lin = best_response_oracle(w, theta, inst.model, inst.u, 4001, 1, 4);
            CHECK(lin.argmax_dist[k] < 1e-6);
        }
    }
}

}  // TEST_SUITE
