/* Copyright 2026 The slicesim Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <benchmark/benchmark.h>

#include "slicesim/experiment.h"
#include "slicesim/run_config.h"
#include "slicesim/sched_policies.h"

namespace {

void run_policy(benchmark::State& state, slicesim::PolicyKind policy) {
  slicesim::RunConfig cfg = slicesim::default_run_config();
  cfg.sched.policy = policy;
  cfg.workload.rate = 20.0;
  cfg.workload.duration_s = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto result = slicesim::run_experiment(cfg);
    benchmark::DoNotOptimize(result.report.throughput);
  }
}

void BM_SimScls(benchmark::State& state) {
  run_policy(state, slicesim::PolicyKind::kScls);
}

void BM_SimSls(benchmark::State& state) {
  run_policy(state, slicesim::PolicyKind::kSls);
}

void BM_SimIls(benchmark::State& state) {
  run_policy(state, slicesim::PolicyKind::kIls);
}

}  // namespace

BENCHMARK(BM_SimScls)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimSls)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimIls)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
