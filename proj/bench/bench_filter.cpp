// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0
//
// Serial reference vs OpenMP filter on the same noisy spline trajectory.

#include "dqfilter/regression.hpp"
#include "dqfilter/trajectory.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace dqfilter;

std::vector<UnitDualQuaternion> make_input(int samples) {
  const SplineSpec spec = SplineSpec::random(7, samples);
  NoiseSpec noise;
  noise.seed = 8;
  return to_dual(add_noise(generate_spline_trajectory(spec), noise).poses);
}

FilterConfig config_for(benchmark::State& state) {
  FilterConfig cfg;
  cfg.window = static_cast<int>(state.range(1));
  return cfg;
}

void BM_FilterSerial(benchmark::State& state) {
  const auto input = make_input(static_cast<int>(state.range(0)));
  const FilterConfig cfg = config_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(serial::filter_trajectory(std::span(input), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FilterParallel(benchmark::State& state) {
  const auto input = make_input(static_cast<int>(state.range(0)));
  const FilterConfig cfg = config_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(filter_trajectory(std::span(input), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_FilterSerial)->Args({500, 19})->Args({5000, 19})->Args({5000, 51})->UseRealTime();
BENCHMARK(BM_FilterParallel)->Args({500, 19})->Args({5000, 19})->Args({5000, 51})->UseRealTime();

BENCHMARK_MAIN();
