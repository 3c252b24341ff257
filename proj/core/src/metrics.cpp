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

#include "slicesim/metrics.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <vector>

#include <json.hpp>

#include "slicesim/errors.h"

namespace slicesim {

MetricsReport compute(const EventLog& log) {
  if (log.empty()) throw EmptyLogError("cannot compute metrics from an empty log");

  double first_arrival = std::numeric_limits<double>::infinity();
  double last_completion = -std::numeric_limits<double>::infinity();
  std::vector<double> responses;
  std::map<int, long long> slice_counts;
  long long total_pad = 0;
  long long total_invalid = 0;
  long long batch_count = 0;
  long long batch_members = 0;
  long long early_returns = 0;
  std::vector<double> last_batch_end(
      static_cast<std::size_t>(std::max(log.worker_count, 0)), 0.0);

  for (const EventRecord& e : log.events) {
    switch (e.kind) {
      case EventKind::kArrival:
        first_arrival = std::min(first_arrival, e.t);
        break;
      case EventKind::kComplete:
        last_completion = std::max(last_completion, e.t);
        responses.push_back(e.response_s);
        slice_counts[e.slices] += 1;
        break;
      case EventKind::kBatchEnd: {
        batch_count += 1;
        batch_members += e.n;
        if (e.served_l_out < e.planned_l_out) early_returns += 1;
        for (const MemberAccounting& m : e.members) {
          total_pad += m.pad;
          total_invalid += m.invalid;
        }
        if (e.worker >= 0 && e.worker < log.worker_count) {
          last_batch_end[static_cast<std::size_t>(e.worker)] =
              std::max(last_batch_end[static_cast<std::size_t>(e.worker)], e.t);
        }
        break;
      }
      default:
        break;
    }
  }

  if (responses.empty()) {
    throw EmptyLogError("log contains no completed requests");
  }

  MetricsReport report;
  const double span = last_completion - first_arrival;
  const double completed = static_cast<double>(responses.size());
  report.throughput = span > 0.0 ? completed / span : 0.0;

  double sum = 0.0;
  for (double r : responses) sum += r;
  report.avg_response_s = sum / completed;

  std::vector<double> sorted = responses;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t rank = static_cast<std::size_t>(
      std::ceil(0.95 * static_cast<double>(sorted.size())));
  report.p95_response_s = sorted[std::max<std::size_t>(rank, 1) - 1];

  if (log.worker_count > 0) {
    double mean = 0.0;
    for (double t : last_batch_end) mean += t;
    mean /= static_cast<double>(log.worker_count);
    double var = 0.0;
    for (double t : last_batch_end) var += (t - mean) * (t - mean);
    var /= static_cast<double>(log.worker_count);
    report.ct_std_s = std::sqrt(var);
  }

  report.avg_pad_tokens = static_cast<double>(total_pad) / completed;
  report.avg_invalid_tokens = static_cast<double>(total_invalid) / completed;
  report.avg_batch_size =
      batch_count > 0
          ? static_cast<double>(batch_members) / static_cast<double>(batch_count)
          : 0.0;
  for (const auto& [slices, count] : slice_counts) {
    report.slice_count_hist[slices] = static_cast<double>(count) / completed;
  }
  report.early_return_ratio =
      batch_count > 0
          ? static_cast<double>(early_returns) / static_cast<double>(batch_count)
          : 0.0;
  return report;
}

std::string to_json(const MetricsReport& report) {
  nlohmann::ordered_json j;
  j["throughput"] = report.throughput;
  j["avg_response_s"] = report.avg_response_s;
  j["p95_response_s"] = report.p95_response_s;
  j["ct_std_s"] = report.ct_std_s;
  j["avg_pad_tokens"] = report.avg_pad_tokens;
  j["avg_invalid_tokens"] = report.avg_invalid_tokens;
  j["avg_batch_size"] = report.avg_batch_size;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [slices, fraction] : report.slice_count_hist) {
    hist[std::to_string(slices)] = fraction;
  }
  j["slice_count_hist"] = std::move(hist);
  j["early_return_ratio"] = report.early_return_ratio;
  return j.dump(2) + "\n";
}

void save_report(const MetricsReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open report path for writing: " + path);
  out << to_json(report);
}

}  // namespace slicesim
