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

#include "slicesim/offloader.h"

#include <algorithm>
#include <cstddef>

#include "slicesim/errors.h"

namespace slicesim {

std::vector<std::pair<BatchId, WorkerId>> offload(
    const std::vector<Batch>& batches, std::vector<WorkerLoad>& workers) {
  if (batches.empty()) return {};
  if (workers.empty()) {
    throw NoWorkersError("cannot offload batches: no workers configured");
  }

  std::vector<std::size_t> order(batches.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return batches[a].est_serve_time > batches[b].est_serve_time;
                   });

  std::vector<std::pair<BatchId, WorkerId>> assignments;
  assignments.reserve(batches.size());
  for (std::size_t idx : order) {
    WorkerLoad* target = &workers.front();
    for (WorkerLoad& w : workers) {
      if (w.load_estimate < target->load_estimate ||
          (w.load_estimate == target->load_estimate &&
           w.worker_id < target->worker_id)) {
        target = &w;
      }
    }
    target->load_estimate += batches[idx].est_serve_time;
    assignments.emplace_back(batches[idx].id, target->worker_id);
  }
  return assignments;
}

void complete_batch(WorkerLoad& worker, double batch_est_s) {
  worker.load_estimate -= batch_est_s;
  if (worker.load_estimate < 0.0) worker.load_estimate = 0.0;
}

}  // namespace slicesim
