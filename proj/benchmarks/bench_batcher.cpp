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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "slicesim/batcher.h"
#include "slicesim/run_config.h"
#include "slicesim/workload.h"

namespace {

std::vector<slicesim::Request> make_pool(int n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<slicesim::Request> pool;
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    slicesim::Request r;
    r.id = i;
    r.arrival_time = slicesim::next_uniform(engine) * 100.0;
    r.orig_input_len =
        1 + static_cast<int>(slicesim::next_uniform(engine) * 1024.0);
    r.true_gen_len =
        1 + static_cast<int>(slicesim::next_uniform(engine) * 1024.0);
    pool.push_back(r);
  }
  return pool;
}

void BM_BatchRequests(benchmark::State& state) {
  const auto pool = make_pool(static_cast<int>(state.range(0)), 7);
  const auto latency = slicesim::builtin_latency_model();
  const auto memory = slicesim::builtin_memory_model();
  for (auto _ : state) {
    auto batches = slicesim::batch_requests(pool, 128, latency, memory);
    benchmark::DoNotOptimize(batches);
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_BatchRequests)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

BENCHMARK_MAIN();
