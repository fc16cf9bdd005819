// SPDX-License-Identifier: GPL-3.0-or-later

// OpenMP kernels against their serial references.

#include "blindphase/channel.hpp"
#include "blindphase/harness.hpp"
#include "blindphase/pmm.hpp"
#include "blindphase/presets.hpp"
#include "blindphase/reference.hpp"

#include <benchmark/benchmark.h>

using namespace blindphase;

namespace {

void metric_grid_args(benchmark::internal::Benchmark* b)
{
    for (int n : {64, 1024, 16384})
        b->Arg(n);
}

void BM_MetricGridSerial(benchmark::State& state)
{
    const auto c = make_square_qam(64);
    const auto block = transmit_block(c, static_cast<int>(state.range(0)), 0.3,
                                      SnrSpec::from_db(20.0), 1);
    const auto grid = stage_grid(0.0, 0.0, 64, 4, true);
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::evaluate_metric_grid(c, block.samples, grid));
}
BENCHMARK(BM_MetricGridSerial)->Apply(metric_grid_args)->UseRealTime();

void BM_MetricGridOpenMP(benchmark::State& state)
{
    const auto c = make_square_qam(64);
    const auto block = transmit_block(c, static_cast<int>(state.range(0)), 0.3,
                                      SnrSpec::from_db(20.0), 1);
    const auto grid = stage_grid(0.0, 0.0, 64, 4, true);
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_metric_grid(c, block.samples, grid));
}
BENCHMARK(BM_MetricGridOpenMP)->Apply(metric_grid_args)->UseRealTime();

Scenario trial_scenario()
{
    Scenario s = sweep_preset("fig10", 1, 2000);
    s.snr_grid_db = {15.0};
    return s;
}

void BM_TrialsSerial(benchmark::State& state)
{
    const Scenario s = trial_scenario();
    const auto est = make_estimator(EstimatorSpec::parse("pmm(stages=2,phases=10)"));
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::run_trials(s, 0, est));
}
BENCHMARK(BM_TrialsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_TrialsOpenMP(benchmark::State& state)
{
    const Scenario s = trial_scenario();
    const auto est = make_estimator(EstimatorSpec::parse("pmm(stages=2,phases=10)"));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trials(s, 0, est, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TrialsOpenMP)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace

BENCHMARK_MAIN();
