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

#ifndef SLICESIM_OFFLOADER_H_
#define SLICESIM_OFFLOADER_H_

#include <utility>
#include <vector>

#include "slicesim/request.h"

namespace slicesim {

// Estimated outstanding work on one worker: the summed estimated serve
// times of its queued plus in-flight batches.
struct WorkerLoad {
  WorkerId worker_id = 0;
  double load_estimate = 0.0;  // seconds, never negative
};

// Max-min batch placement. Batches are taken in descending order of
// est_serve_time (ties keep creation order); each is assigned to the worker
// with the smallest current load_estimate (ties to the lowest worker_id),
// whose load then grows by the batch's estimate. Returns (batch_id,
// worker_id) pairs in assignment order and mutates `workers` in place.
// Throws NoWorkersError when `workers` is empty and a batch needs placing.
std::vector<std::pair<BatchId, WorkerId>> offload(
    const std::vector<Batch>& batches, std::vector<WorkerLoad>& workers);

// Removes a finished batch's estimated time from the worker, clamping at
// zero so estimation error cannot accumulate into negative load.
void complete_batch(WorkerLoad& worker, double batch_est_s);

}  // namespace slicesim

#endif  // SLICESIM_OFFLOADER_H_
