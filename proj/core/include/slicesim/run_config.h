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

#ifndef SLICESIM_RUN_CONFIG_H_
#define SLICESIM_RUN_CONFIG_H_

#include <iosfwd>
#include <string>

#include "slicesim/cost_model.h"
#include "slicesim/memory_model.h"
#include "slicesim/sched_policies.h"
#include "slicesim/workload.h"

namespace slicesim {

// Everything one experiment run needs. Parsed from a `key = value` config
// file with dotted keys (see apply_override for the key list) and then
// optionally overridden from the command line.
struct RunConfig {
  SchedulerConfig sched;
  WorkloadSpec workload;
  bool workload_from_trace = false;
  std::string trace_path;
  std::string latency_model_path;  // empty: built-in synthetic model
  std::string memory_model_path;   // empty: built-in rule table
  std::string report_path;         // empty: write report to stdout
  std::string event_log_path;      // empty: keep the log in memory only
  double horizon_s = 1e7;
};

RunConfig default_run_config();

// Applies one dotted-key override, e.g. ("policy.slice_len", "256").
// Accepted keys:
//   policy.kind, policy.slice_len, policy.max_gen_limit, policy.lambda,
//   policy.gamma, policy.fixed_batch_size, policy.max_concurrent,
//   policy.workers,
//   workload.kind (poisson|trace), workload.rate, workload.duration,
//   workload.seed, workload.preset (codefuse-like|long-gen),
//   workload.input_dist, workload.gen_dist (uniform:LO:HI |
//   lognormal:MU:SIGMA:CAP | hist:E0,E1,...=W0,W1,...),
//   workload.max_input_limit, workload.max_gen_limit, workload.trace,
//   models.latency, models.memory, output.report, output.event_log,
//   sim.horizon
// Throws Error on unknown keys or unparsable values.
void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value);

// Parses `key = value` lines; '#' starts a comment, blank lines are
// skipped. Throws ParseError with the offending 1-based line number.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

// Synthetic single-GPU serving profile used when no fitted model is given.
// The coefficients are not measurements of any real engine; they reproduce
// the shape of transformer serving costs (prefill superlinear in batch
// size times length, decode dominated by a per-iteration floor).
LatencyModel builtin_latency_model();

// Rule-table memory model matching the published engine judgment: batch
// size capped at 12 above 1024 total tokens, 22 above 512, 28 otherwise.
MemoryModel builtin_memory_model();

// Analytic alternative sized like an 80 GB device serving a mid-size
// model; used by tests and available via models.memory = "builtin-analytic".
MemoryModel builtin_analytic_memory_model();

}  // namespace slicesim

#endif  // SLICESIM_RUN_CONFIG_H_
