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

#include "slicesim/event_log.h"

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "slicesim/errors.h"

namespace slicesim {

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kArrival: return "arrival";
    case EventKind::kTick: return "tick";
    case EventKind::kDispatch: return "dispatch";
    case EventKind::kBatchStart: return "batch_start";
    case EventKind::kBatchEnd: return "batch_end";
    case EventKind::kComplete: return "complete";
  }
  return "unknown";
}

void EventLog::to_jsonl(std::ostream& out) const {
  for (const EventRecord& e : events) {
    nlohmann::ordered_json j;
    j["t"] = e.t;
    j["kind"] = to_string(e.kind);
    switch (e.kind) {
      case EventKind::kArrival:
        j["request"] = e.request;
        j["input_len"] = e.input_len;
        j["gen_len"] = e.gen_len;
        break;
      case EventKind::kTick:
        j["batches"] = e.n;
        j["next_interval_s"] = e.next_interval_s;
        break;
      case EventKind::kDispatch:
        j["worker"] = e.worker;
        j["batch"] = e.batch;
        if (e.request >= 0) j["request"] = e.request;
        j["n"] = e.n;
        j["l_in"] = e.l_in;
        j["planned_l_out"] = e.planned_l_out;
        j["est_serve_s"] = e.est_serve_s;
        break;
      case EventKind::kBatchStart:
        j["worker"] = e.worker;
        j["batch"] = e.batch;
        j["n"] = e.n;
        j["l_in"] = e.l_in;
        break;
      case EventKind::kBatchEnd: {
        j["worker"] = e.worker;
        j["batch"] = e.batch;
        j["n"] = e.n;
        j["l_in"] = e.l_in;
        j["planned_l_out"] = e.planned_l_out;
        j["served_l_out"] = e.served_l_out;
        nlohmann::ordered_json members = nlohmann::ordered_json::array();
        for (const MemberAccounting& m : e.members) {
          members.push_back({{"request", m.request},
                             {"eff_input", m.effective_input},
                             {"pad", m.pad},
                             {"gen", m.gen},
                             {"invalid", m.invalid}});
        }
        j["members"] = std::move(members);
        break;
      }
      case EventKind::kComplete:
        j["request"] = e.request;
        j["worker"] = e.worker;
        j["response_s"] = e.response_s;
        j["slices"] = e.slices;
        break;
    }
    out << j.dump() << '\n';
  }
}

void EventLog::save_jsonl(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open event log path for writing: " + path);
  to_jsonl(out);
}

}  // namespace slicesim
