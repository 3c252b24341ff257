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

#include "slicesim/experiment.h"

#include <cmath>
#include <ostream>
#include <sstream>

#include "slicesim/errors.h"
#include "slicesim/sim_engine.h"
#include "slicesim/workload.h"

namespace slicesim {

LatencyModel resolve_latency_model(const std::string& path) {
  if (path.empty()) return builtin_latency_model();
  return load_latency_model(path);
}

MemoryModel resolve_memory_model(const std::string& path) {
  if (path.empty()) return builtin_memory_model();
  if (path == "builtin-analytic") return builtin_analytic_memory_model();
  return load_memory_model(path);
}

RunResult run_experiment(const RunConfig& cfg) {
  const LatencyModel latency = resolve_latency_model(cfg.latency_model_path);
  const MemoryModel memory = resolve_memory_model(cfg.memory_model_path);

  std::vector<Request> requests;
  if (cfg.workload_from_trace) {
    if (cfg.trace_path.empty()) {
      throw Error("workload.kind = trace requires workload.trace = <path>");
    }
    requests = load_trace(cfg.trace_path, cfg.workload.max_input_limit,
                          cfg.workload.max_gen_limit);
  } else {
    requests = generate(cfg.workload);
  }

  Simulator sim(cfg.sched, latency, memory, cfg.horizon_s);
  auto policy = make_scheduler(cfg.sched.policy);
  RunResult result;
  result.log = sim.run(std::move(requests), *policy);
  result.report = compute(result.log);
  return result;
}

std::vector<SweepRow> sweep(const RunConfig& base, const std::string& param,
                            const std::vector<double>& values) {
  if (values.empty()) throw Error("sweep requires at least one value");
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double value : values) {
    RunConfig cfg = base;
    if (param == "rate") {
      cfg.workload.rate = value;
    } else if (param == "slice_len") {
      cfg.sched.slice_len = static_cast<int>(std::llround(value));
    } else if (param == "workers") {
      cfg.sched.worker_count = static_cast<int>(std::llround(value));
    } else {
      throw Error("unknown sweep parameter '" + param +
                  "' (expected rate, slice_len, or workers)");
    }
    SweepRow row;
    row.value = value;
    row.report = run_experiment(cfg).report;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::string format_hist(const std::map<int, double>& hist) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [slices, fraction] : hist) {
    if (!first) out << ';';
    first = false;
    out << slices << ':' << format_double(fraction);
  }
  return out.str();
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::string& param,
                     const std::vector<SweepRow>& rows) {
  out << param
      << ",throughput,avg_response_s,p95_response_s,ct_std_s,avg_pad_tokens,"
         "avg_invalid_tokens,avg_batch_size,slice_count_hist,"
         "early_return_ratio\n";
  for (const SweepRow& row : rows) {
    const MetricsReport& r = row.report;
    out << format_double(row.value) << ',' << format_double(r.throughput)
        << ',' << format_double(r.avg_response_s) << ','
        << format_double(r.p95_response_s) << ',' << format_double(r.ct_std_s)
        << ',' << format_double(r.avg_pad_tokens) << ','
        << format_double(r.avg_invalid_tokens) << ','
        << format_double(r.avg_batch_size) << ','
        << format_hist(r.slice_count_hist) << ','
        << format_double(r.early_return_ratio) << '\n';
  }
}

}  // namespace slicesim
