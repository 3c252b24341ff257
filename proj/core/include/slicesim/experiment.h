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

#ifndef SLICESIM_EXPERIMENT_H_
#define SLICESIM_EXPERIMENT_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "slicesim/event_log.h"
#include "slicesim/metrics.h"
#include "slicesim/run_config.h"

namespace slicesim {

struct RunResult {
  EventLog log;
  MetricsReport report;
};

// Resolves the configured models and workload (generated or trace), runs
// one simulation, and computes the report. Deterministic for a fixed
// config.
RunResult run_experiment(const RunConfig& cfg);

// Model resolution shared with the CLI: an empty path yields the built-in
// model, "builtin-analytic" the analytic memory alternative, anything else
// is loaded from JSON.
LatencyModel resolve_latency_model(const std::string& path);
MemoryModel resolve_memory_model(const std::string& path);

// Sweepable parameters: "rate" (arrivals/s), "slice_len" (tokens), and
// "workers" (instance count).
struct SweepRow {
  double value = 0.0;
  MetricsReport report;
};

std::vector<SweepRow> sweep(const RunConfig& base, const std::string& param,
                            const std::vector<double>& values);

// One CSV row per run: the swept parameter, then every report field. The
// slice-count histogram is packed as `count:fraction` pairs joined by ';'.
void write_sweep_csv(std::ostream& out, const std::string& param,
                     const std::vector<SweepRow>& rows);

}  // namespace slicesim

#endif  // SLICESIM_EXPERIMENT_H_
