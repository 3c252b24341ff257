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

#ifndef SLICESIM_SIM_ENGINE_H_
#define SLICESIM_SIM_ENGINE_H_

#include <cstdint>
#include <deque>
#include <optional>
#include <queue>
#include <vector>

#include "slicesim/cost_model.h"
#include "slicesim/event_log.h"
#include "slicesim/memory_model.h"
#include "slicesim/request.h"
#include "slicesim/sched_policies.h"

namespace slicesim {

enum class SimEventKind { kArrival, kScheduleTick, kBatchDone, kPolicyEvent, kEndOfRun };

// Internal queue entry. Events are processed in (time, seq) order; seq is
// assigned at insertion, which makes simultaneous events deterministic.
struct SimEvent {
  double time = 0.0;
  std::uint64_t seq = 0;
  SimEventKind kind = SimEventKind::kArrival;
  RequestId request = -1;
  WorkerId worker = -1;
};

struct WorkerSim {
  WorkerId id = 0;
  std::deque<std::pair<Batch, int>> local_queue;  // (batch, served l_out), FIFO
  std::optional<Batch> in_flight;
  int in_flight_l_out = 0;
  double busy_until = 0.0;
  double load_estimate = 0.0;  // maintained by the policy via the offloader
  bool idle() const { return !in_flight.has_value(); }
};

// Deterministic discrete-event simulator. Owns the virtual clock, the
// event queue, worker states, and the run's event log; policy logic is
// delegated to a Scheduler. Single-threaded per run; independent runs may
// execute in parallel.
class Simulator {
 public:
  Simulator(SchedulerConfig cfg, LatencyModel latency, MemoryModel memory,
            double horizon_s = 1e7);

  // Processes events until every arrived request has completed. Returns the
  // full event log. Throws NonTerminationError if the virtual clock passes
  // the horizon first.
  EventLog run(std::vector<Request> workload, Scheduler& policy);

  double clock() const { return clock_; }
  const SchedulerConfig& config() const { return cfg_; }
  const LatencyModel& latency() const { return latency_; }
  const MemoryModel& memory() const { return memory_; }

  Request& request(RequestId id) { return requests_[static_cast<std::size_t>(id)]; }
  const Request& request(RequestId id) const {
    return requests_[static_cast<std::size_t>(id)];
  }
  std::vector<WorkerSim>& workers() { return workers_; }
  WorkerSim& worker(WorkerId id) { return workers_[static_cast<std::size_t>(id)]; }

  // Places a batch on the worker's FIFO queue; if the worker is idle the
  // batch starts serving immediately. served_l_out is the output length the
  // serve actually runs for (at most the planned length).
  void enqueue_batch(WorkerId worker, Batch batch, int served_l_out);

  void schedule_tick(double at);
  void schedule_policy_event(double at, WorkerId worker);

  // Stamps completion_time, logs the completion, and counts the request
  // toward run termination.
  void complete_request(RequestId id, WorkerId worker);

  EventLog& log() { return log_; }

 private:
  void push_event(double time, SimEventKind kind, RequestId request,
                  WorkerId worker);
  void start_next_batch(WorkerId worker);

  struct EventAfter {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  SchedulerConfig cfg_;
  LatencyModel latency_;
  MemoryModel memory_;
  double horizon_s_;

  double clock_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<SimEvent, std::vector<SimEvent>, EventAfter> queue_;
  std::vector<Request> requests_;
  std::vector<WorkerSim> workers_;
  std::size_t completed_ = 0;
  EventLog log_;
};

}  // namespace slicesim

#endif  // SLICESIM_SIM_ENGINE_H_
