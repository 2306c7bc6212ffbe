// Serial reference vs OpenMP kernels on representative grids.
#include <benchmark/benchmark.h>

#include "cvqkd/analysis.hpp"
#include "cvqkd/spectrum.hpp"

namespace {

cvqkd::SweepSpec sweep_spec() {
    cvqkd::SweepSpec spec;
    spec.protocol = cvqkd::kReverseHeterodyne;
    spec.axis = cvqkd::SweepAxis::t;
    spec.range = {0.0, 1.0, 2001, cvqkd::Spacing::linear};
    spec.src = {1e3, 2.0};
    spec.ch = {0.5, 1.5};
    return spec;
}

cvqkd::SecurityMapSpec map_spec() {
    cvqkd::SecurityMapSpec spec;
    spec.frequencies.steps = 40;
    spec.transmissions.steps = 101;
    return spec;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto spec = sweep_spec();
    for (auto _ : state) {
        benchmark::DoNotOptimize(cvqkd::run_sweep_serial(spec));
    }
}

void BM_SweepParallel(benchmark::State& state) {
    const auto spec = sweep_spec();
    for (auto _ : state) {
        benchmark::DoNotOptimize(cvqkd::run_sweep(spec));
    }
}

void BM_MapSerial(benchmark::State& state) {
    const auto spec = map_spec();
    for (auto _ : state) {
        benchmark::DoNotOptimize(cvqkd::security_map_serial(spec));
    }
}

void BM_MapParallel(benchmark::State& state) {
    const auto spec = map_spec();
    for (auto _ : state) {
        benchmark::DoNotOptimize(cvqkd::security_map(spec));
    }
}

void BM_ThresholdSerial(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            cvqkd::threshold_find_serial(cvqkd::kDirectHeterodyne, {1e3, 5.0}, 1.0, {}));
    }
}

void BM_ThresholdParallel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            cvqkd::threshold_find(cvqkd::kDirectHeterodyne, {1e3, 5.0}, 1.0, {}));
    }
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MapSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MapParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThresholdSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThresholdParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
