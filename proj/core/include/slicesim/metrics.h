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

#ifndef SLICESIM_METRICS_H_
#define SLICESIM_METRICS_H_

#include <map>
#include <string>

#include "slicesim/event_log.h"

namespace slicesim {

struct MetricsReport {
  double throughput = 0.0;     // completed requests per second of run span
  double avg_response_s = 0.0;
  double p95_response_s = 0.0; // nearest-rank percentile
  double ct_std_s = 0.0;       // population std-dev of per-worker last batch end
  double avg_pad_tokens = 0.0;     // per completed request
  double avg_invalid_tokens = 0.0; // per completed request
  double avg_batch_size = 0.0;     // mean n over batch executions
  std::map<int, double> slice_count_hist;  // batches per request -> fraction
  double early_return_ratio = 0.0; // batches served shorter than planned
};

// Derives the full report from a completed run's log. Throws EmptyLogError
// on a log with no events. The throughput span runs from the first arrival
// to the last completion; a degenerate zero span yields zero throughput.
MetricsReport compute(const EventLog& log);

// Report JSON with exactly the MetricsReport fields. to_json emits a
// stable, human-readable document; save writes it to path.
std::string to_json(const MetricsReport& report);
void save_report(const MetricsReport& report, const std::string& path);

}  // namespace slicesim

#endif  // SLICESIM_METRICS_H_
