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

#ifndef SLICESIM_BATCHER_H_
#define SLICESIM_BATCHER_H_

#include <vector>

#include "slicesim/cost_model.h"
#include "slicesim/memory_model.h"
#include "slicesim/request.h"

namespace slicesim {

// Partitions `requests` into batches minimizing total estimated serving time
// for one slice, by dynamic programming over contiguous segments of the
// requests sorted ascending by effective input length (ties: arrival time,
// then id). Candidate batches grow until the memory model reports OOM; the
// check is monotone in batch size, so the first failure ends the scan. Ties
// in total time keep the earlier-found, smaller-batch split.
//
// Returned batches are disjoint, cover the input, each passes
// would_oom == false, and appear in ascending order of their segment (so
// batch ids count up from `first_batch_id` deterministically).
//
// Throws InfeasibleRequestError for a request that cannot form even a
// singleton batch. Pure function; callable concurrently.
std::vector<Batch> batch_requests(const std::vector<Request>& requests,
                                  int slice_len, const LatencyModel& latency,
                                  const MemoryModel& memory,
                                  BatchId first_batch_id = 0);

}  // namespace slicesim

#endif  // SLICESIM_BATCHER_H_
