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

#ifndef SLICESIM_REQUEST_H_
#define SLICESIM_REQUEST_H_

#include <cstdint>
#include <optional>
#include <vector>

namespace slicesim {

using RequestId = std::int64_t;
using BatchId = std::int64_t;
using WorkerId = int;

// One generation request. `true_gen_len` is simulation ground truth: the
// number of tokens the request will emit before EOS. Schedulers never read
// it; the simulated serving process does.
struct Request {
  RequestId id = 0;
  double arrival_time = 0.0;
  int orig_input_len = 1;
  int true_gen_len = 1;

  // Progress, owned by the simulation.
  int generated_so_far = 0;
  int slices_served = 0;
  std::optional<double> first_dispatch_time;
  std::optional<double> completion_time;

  // Rescheduled requests re-run prefill over their full context, so the
  // input length a scheduler sees grows with every served slice.
  int effective_input_len() const { return orig_input_len + generated_so_far; }
  int remaining_gen() const { return true_gen_len - generated_so_far; }
  bool done() const { return generated_so_far >= true_gen_len; }
};

// A group of requests served together as one padded static batch.
struct Batch {
  BatchId id = 0;
  std::vector<RequestId> requests;
  int l_in = 0;           // max member effective input length
  int planned_l_out = 0;  // iteration cap: the slice length under SCLS
  double est_serve_time = 0.0;

  int n() const { return static_cast<int>(requests.size()); }
};

}  // namespace slicesim

#endif  // SLICESIM_REQUEST_H_
