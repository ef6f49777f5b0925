#include <benchmark/benchmark.h>

#include <random>

#include "pact/best_response.hpp"
#include "pact/ic_verify.hpp"
#include "pact/solver.hpp"

using namespace pact;

namespace {

CostModel make_model(std::size_t n) {
    return CostModel::composite(KernelFn::affine(1.0), OuterFn::power(2.0),
                                OutputGrid::linspace(0.0, 1.0, n));
}

WageSchedule random_wage(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.5);
    std::vector<double> pay(n);
    for (double& p : pay) p = dist(rng);
    return WageSchedule(std::move(pay));
}

void BM_BestResponseComposite(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const CostModel model = make_model(n);
    const UtilityFn u = UtilityFn::linear();
    const WageSchedule w = random_wage(n, 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(best_response_composite(w, 0.5, model, u));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BestResponseComposite)->Arg(11)->Arg(101)->Arg(1001);

void BM_SolveBinaryPipeline(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    const CostModel model = make_model(101);
    const TypeDistribution F = TypeDistribution::uniform(0.2, 0.8);
    const TypeGrid types = TypeGrid::linspace(0.2, 0.8, m);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_binary(model, F, types, UtilityFn::linear()));
    }
}
BENCHMARK(BM_SolveBinaryPipeline)->Arg(11)->Arg(41);

void BM_BruteForceIC(benchmark::State& state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    const CostModel model = make_model(101);
    const TypeDistribution F = TypeDistribution::uniform(0.2, 0.8);
    const TypeGrid types = TypeGrid::linspace(0.2, 0.8, m);
    const SolveResult solved = solve_binary(model, F, types, UtilityFn::linear());
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_ic(solved.mechanism, model, UtilityFn::linear()));
    }
}
BENCHMARK(BM_BruteForceIC)->Arg(11)->Arg(41);

}  // namespace

BENCHMARK_MAIN();
