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

#include "slicesim/batcher.h"

#include <algorithm>
#include <limits>
#include <tuple>

#include "slicesim/errors.h"

namespace slicesim {

std::vector<Batch> batch_requests(const std::vector<Request>& requests,
                                  int slice_len, const LatencyModel& latency,
                                  const MemoryModel& memory,
                                  BatchId first_batch_id) {
  if (requests.empty()) return {};

  std::vector<const Request*> sorted;
  sorted.reserve(requests.size());
  for (const Request& r : requests) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const Request* a, const Request* b) {
    return std::tuple(a->effective_input_len(), a->arrival_time, a->id) <
           std::tuple(b->effective_input_len(), b->arrival_time, b->id);
  });

  for (const Request* r : sorted) {
    if (memory.would_oom(1, r->effective_input_len(), slice_len)) {
      throw InfeasibleRequestError(
          r->id, "request " + std::to_string(r->id) +
                     " does not fit memory even as a singleton batch");
    }
  }

  const int n = static_cast<int>(sorted.size());
  // total[i]: minimal total serving time of the first i sorted requests.
  // split[i]: start index of the batch that ends at request i (1-based i).
  std::vector<double> total(n + 1, 0.0);
  std::vector<int> split(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    const int len_i = sorted[i - 1]->effective_input_len();
    split[i] = i - 1;
    total[i] = total[i - 1] + batch_serve_time(latency, 1, len_i, slice_len);
    for (int j = i - 1;
         j > 0 && !memory.would_oom(i - j + 1, len_i, slice_len); --j) {
      const double t =
          total[j - 1] + batch_serve_time(latency, i - j + 1, len_i, slice_len);
      if (t < total[i]) {
        total[i] = t;
        split[i] = j - 1;
      }
    }
  }

  // Walk the recorded splits back to segment boundaries, then emit batches
  // in ascending segment order so ids are stable.
  std::vector<std::pair<int, int>> segments;
  for (int i = n; i > 0; i = split[i]) segments.emplace_back(split[i], i);
  std::reverse(segments.begin(), segments.end());

  std::vector<Batch> batches;
  batches.reserve(segments.size());
  for (const auto& [begin, end] : segments) {
    Batch b;
    b.id = first_batch_id + static_cast<BatchId>(batches.size());
    b.l_in = sorted[end - 1]->effective_input_len();
    b.planned_l_out = slice_len;
    for (int k = begin; k < end; ++k) b.requests.push_back(sorted[k]->id);
    b.est_serve_time = batch_serve_time(latency, b.n(), b.l_in, slice_len);
    batches.push_back(std::move(b));
  }
  return batches;
}

}  // namespace slicesim
