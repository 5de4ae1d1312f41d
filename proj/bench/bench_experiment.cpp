// Serial reference against the OpenMP kernels of the experiment driver.

#include <benchmark/benchmark.h>

#include "aew/experiment.hpp"

using namespace aew;

namespace {

ExperimentConfig sched_config(int per_bucket) {
    ExperimentConfig cfg;
    cfg.tasksets_per_bucket = per_bucket;
    cfg.policies = {PolicyKind::Baseline, PolicyKind::Paranoid, PolicyKind::Trusted};
    cfg.victims = {VictimPosition::High};
    cfg.aew = {0.3};
    return cfg;
}

ExperimentConfig coverage_config(int per_bucket) {
    ExperimentConfig cfg;
    cfg.tasksets_per_bucket = per_bucket;
    cfg.policies = {PolicyKind::Baseline, PolicyKind::CoverageOriented};
    cfg.aew = {0.3};
    return cfg;
}

template <Execution E>
void BM_SchedRatio(benchmark::State& state) {
    const auto cfg = sched_config(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_sched_ratio(cfg, E));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}

template <Execution E>
void BM_Coverage(benchmark::State& state) {
    const auto cfg = coverage_config(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_coverage(cfg, E));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}

}  // namespace

BENCHMARK(BM_SchedRatio<Execution::Serial>)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SchedRatio<Execution::Parallel>)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Coverage<Execution::Serial>)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Coverage<Execution::Parallel>)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
