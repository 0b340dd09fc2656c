#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "resgame/core_analysis.hpp"
#include "resgame/cournot.hpp"
#include "resgame/provider.hpp"

using namespace resgame;

namespace {

CharacteristicFunction random_table(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> worth_dist(0.0, 10.0);
    std::vector<std::pair<Coalition, double>> entries;
    entries.reserve((std::size_t{1} << n) - 1);
    for (const Coalition& coalition : enumerate_coalitions(n)) {
        entries.emplace_back(coalition, worth_dist(rng));
    }
    return CharacteristicFunction::from_table(n, entries);
}

void BM_EnumerateCoalitions(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        std::size_t count = 0;
        for (const Coalition& coalition : enumerate_coalitions(n)) {
            benchmark::DoNotOptimize(coalition.members());
            ++count;
        }
        benchmark::DoNotOptimize(count);
    }
    state.SetItemsProcessed(state.iterations() * ((std::int64_t{1} << n) - 1));
}
BENCHMARK(BM_EnumerateCoalitions)->DenseRange(8, 24, 4);

void BM_CoreCheckExplicit(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto worth = random_table(n, 99);
    for (auto _ : state) {
        benchmark::DoNotOptimize(core_nonempty(worth));
    }
}
BENCHMARK(BM_CoreCheckExplicit)->DenseRange(8, 16, 4);

void BM_CoreCheckInduced(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const CournotGame game(n, 10.0, 2.0);
    const auto worth = CharacteristicFunction::induced(game);
    for (auto _ : state) {
        benchmark::DoNotOptimize(core_nonempty(worth));
    }
}
BENCHMARK(BM_CoreCheckInduced)->DenseRange(8, 24, 4);

void BM_BestResponseIteration(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const CournotGame game(n, 10.0, 2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            iterate_best_response(game, std::vector<double>(static_cast<std::size_t>(n), 0.0)));
    }
}
BENCHMARK(BM_BestResponseIteration)->DenseRange(4, 24, 4);

void BM_DifferentiatedSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const CournotGame game(n, 10.0, 2.0, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(differentiated_equilibrium(game));
    }
}
BENCHMARK(BM_DifferentiatedSolve)->DenseRange(4, 24, 4);

void BM_RemediationPlan(benchmark::State& state) {
    const CournotGame game(static_cast<int>(state.range(0)), 10.0, 2.0);
    const std::vector<CompetitorOffer> offers = {
        CompetitorOffer(Coalition::from_indices({0, 1}), 12.0)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(remediation_plan(game, offers));
    }
}
BENCHMARK(BM_RemediationPlan)->DenseRange(4, 24, 10);

}  // namespace

BENCHMARK_MAIN();
