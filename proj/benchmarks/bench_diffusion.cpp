#include <benchmark/benchmark.h>

#include <numeric>

#include "coreflow/coreflow.hpp"

using namespace coreflow;

namespace {

// State with a grown core, so the sweep has real senders to scatter from.
ChargeState warmed_state(const Graph& g, double eps, int warmup_steps) {
    ChargeState state;
    state.x.assign(g.node_count(), 0.0);
    state.eps.assign(g.node_count(), eps);
    state.x[select_seed(g, SeedPolicy::max_degree())] = 1.0;
    for (int t = 0; t < warmup_steps; ++t) {
        state = step(g, state);
    }
    return state;
}

void BM_StepRegular(benchmark::State& bench) {
    const int n = static_cast<int>(bench.range(0));
    const Graph g = gen_random_regular(n, 10, 7);
    const ChargeState state = warmed_state(g, 10.0 / n, 10);
    for (auto _ : bench) {
        benchmark::DoNotOptimize(step(g, state));
    }
    bench.SetItemsProcessed(bench.iterations() * n);
}
BENCHMARK(BM_StepRegular)->Arg(1000)->Arg(10000);

void BM_StepPowerlaw(benchmark::State& bench) {
    const int n = static_cast<int>(bench.range(0));
    const Graph g = gen_powerlaw(n, 5, 7);
    const ChargeState state = warmed_state(g, 10.0 / n, 10);
    for (auto _ : bench) {
        benchmark::DoNotOptimize(step(g, state));
    }
    bench.SetItemsProcessed(bench.iterations() * n);
}
BENCHMARK(BM_StepPowerlaw)->Arg(1000)->Arg(10000);

void BM_RunToTermination(benchmark::State& bench) {
    const int n = static_cast<int>(bench.range(0));
    const Graph g = gen_random_regular(n, 10, 7);
    DiffusionConfig config;
    config.seeds = {{select_seed(g, SeedPolicy::max_degree()), 1.0}};
    config.thresholds = Thresholds::uniform(10.0 / n);
    config.delta_term = default_delta_term(n);
    config.max_iters = default_max_iters(n);
    for (auto _ : bench) {
        benchmark::DoNotOptimize(run(g, config));
    }
}
BENCHMARK(BM_RunToTermination)->Arg(1000)->Arg(10000);

void BM_GenRandomRegular(benchmark::State& bench) {
    const int n = static_cast<int>(bench.range(0));
    std::uint64_t seed = 1;
    for (auto _ : bench) {
        benchmark::DoNotOptimize(gen_random_regular(n, 10, seed++));
    }
}
BENCHMARK(BM_GenRandomRegular)->Arg(1000)->Arg(10000);

void BM_GenPowerlaw(benchmark::State& bench) {
    const int n = static_cast<int>(bench.range(0));
    std::uint64_t seed = 1;
    for (auto _ : bench) {
        benchmark::DoNotOptimize(gen_powerlaw(n, 5, seed++));
    }
}
BENCHMARK(BM_GenPowerlaw)->Arg(1000)->Arg(50000);

void BM_GossipRoundMetropolis(benchmark::State& bench) {
    const int n = static_cast<int>(bench.range(0));
    const Graph g = gen_random_regular(n, 10, 3);
    RunSummary whole;
    whole.core.resize(n);
    std::iota(whole.core.begin(), whole.core.end(), 0);
    std::vector<double> values(n);
    std::iota(values.begin(), values.end(), 0.0);
    const CoreView view = build_core_view(g, whole, values);
    for (auto _ : bench) {
        benchmark::DoNotOptimize(gossip_round(view, Combiner::average_metropolis()));
    }
}
BENCHMARK(BM_GossipRoundMetropolis)->Arg(100)->Arg(1000);

} // namespace

BENCHMARK_MAIN();
