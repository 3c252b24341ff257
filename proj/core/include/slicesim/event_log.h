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

#ifndef SLICESIM_EVENT_LOG_H_
#define SLICESIM_EVENT_LOG_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "slicesim/request.h"

namespace slicesim {

enum class EventKind {
  kArrival,     // request entered the system
  kTick,        // scheduler pass ran; records the chosen next interval
  kDispatch,    // batch placed on a worker (or, per-request, a join)
  kBatchStart,  // worker began serving a batch
  kBatchEnd,    // worker finished a batch; carries member accounting
  kComplete,    // request finished all generation
};

// Per-member accounting attached to a batch-end event. `effective_input`
// is the member's input length at dispatch (original plus previously
// generated tokens), `pad` the filler tokens added to reach the batch
// input length, `gen` the useful tokens produced this batch, and
// `invalid` the tokens produced after the member had already finished.
struct MemberAccounting {
  RequestId request = -1;
  int effective_input = 0;
  int pad = 0;
  int gen = 0;
  int invalid = 0;
};

// One simulation event. Which fields are meaningful depends on `kind`;
// unused fields keep their defaults. See EventLog::to_jsonl for the
// serialized schema.
struct EventRecord {
  double t = 0.0;
  EventKind kind = EventKind::kArrival;
  RequestId request = -1;  // arrival, complete, per-request dispatch
  WorkerId worker = -1;    // dispatch, batch start/end, complete
  BatchId batch = -1;      // dispatch, batch start/end
  int n = 0;               // batch size; for tick, batches assigned
  int l_in = 0;            // batch input length
  int planned_l_out = 0;   // output length the estimate assumed
  int served_l_out = 0;    // output length actually served (batch end)
  double est_serve_s = 0.0;
  int input_len = 0;            // arrival
  int gen_len = 0;              // arrival
  double response_s = 0.0;      // complete
  int slices = 0;               // complete: batches this request was in
  double next_interval_s = 0.0; // tick
  std::vector<MemberAccounting> members;  // batch end
};

// Append-only record of a full simulation run.
struct EventLog {
  int worker_count = 0;
  std::vector<EventRecord> events;

  void add(EventRecord record) { events.push_back(std::move(record)); }
  bool empty() const { return events.empty(); }

  // One JSON object per line, LF-terminated. Every line carries "t" and
  // "kind"; the remaining fields follow the EventRecord documentation for
  // that kind. Output is byte-stable for identical logs.
  void to_jsonl(std::ostream& out) const;
  void save_jsonl(const std::string& path) const;
};

std::string to_string(EventKind kind);

}  // namespace slicesim

#endif  // SLICESIM_EVENT_LOG_H_
