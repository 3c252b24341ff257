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

#include "slicesim/sim_engine.h"

#include <algorithm>
#include <string>
#include <utility>

#include "slicesim/errors.h"

namespace slicesim {

Simulator::Simulator(SchedulerConfig cfg, LatencyModel latency,
                     MemoryModel memory, double horizon_s)
    : cfg_(std::move(cfg)),
      latency_(latency),
      memory_(std::move(memory)),
      horizon_s_(horizon_s) {
  validate(cfg_);
  validate(latency_);
  validate(memory_);
  if (!(horizon_s_ > 0.0)) throw Error("simulation horizon must be > 0");
  workers_.resize(static_cast<std::size_t>(cfg_.worker_count));
  for (std::size_t i = 0; i < workers_.size(); ++i) {
    workers_[i].id = static_cast<WorkerId>(i);
  }
  log_.worker_count = cfg_.worker_count;
}

void Simulator::push_event(double time, SimEventKind kind, RequestId request,
                           WorkerId worker) {
  queue_.push(SimEvent{time, next_seq_++, kind, request, worker});
}

void Simulator::schedule_tick(double at) {
  push_event(at, SimEventKind::kScheduleTick, -1, -1);
}

void Simulator::schedule_policy_event(double at, WorkerId worker) {
  push_event(at, SimEventKind::kPolicyEvent, -1, worker);
}

void Simulator::enqueue_batch(WorkerId worker_id, Batch batch,
                              int served_l_out) {
  WorkerSim& w = worker(worker_id);
  w.local_queue.emplace_back(std::move(batch), served_l_out);
  if (w.idle()) start_next_batch(worker_id);
}

void Simulator::start_next_batch(WorkerId worker_id) {
  WorkerSim& w = worker(worker_id);
  if (!w.idle() || w.local_queue.empty()) return;
  auto [batch, served_l_out] = std::move(w.local_queue.front());
  w.local_queue.pop_front();

  EventRecord start;
  start.t = clock_;
  start.kind = EventKind::kBatchStart;
  start.worker = worker_id;
  start.batch = batch.id;
  start.n = batch.n();
  start.l_in = batch.l_in;
  log_.add(std::move(start));

  const double serve_s =
      batch_serve_time(latency_, batch.n(), batch.l_in, served_l_out);
  w.busy_until = clock_ + serve_s;
  w.in_flight = std::move(batch);
  w.in_flight_l_out = served_l_out;
  push_event(w.busy_until, SimEventKind::kBatchDone, -1, worker_id);
}

void Simulator::complete_request(RequestId id, WorkerId worker_id) {
  Request& r = request(id);
  r.completion_time = clock_;
  ++completed_;

  EventRecord done;
  done.t = clock_;
  done.kind = EventKind::kComplete;
  done.request = id;
  done.worker = worker_id;
  done.response_s = clock_ - r.arrival_time;
  done.slices = r.slices_served;
  log_.add(std::move(done));
}

EventLog Simulator::run(std::vector<Request> workload, Scheduler& policy) {
  std::stable_sort(workload.begin(), workload.end(),
                   [](const Request& a, const Request& b) {
                     if (a.arrival_time != b.arrival_time) {
                       return a.arrival_time < b.arrival_time;
                     }
                     return a.id < b.id;
                   });
  requests_ = std::move(workload);
  for (std::size_t i = 0; i < requests_.size(); ++i) {
    if (requests_[i].id != static_cast<RequestId>(i)) {
      throw Error("workload request ids must be 0..n-1 in arrival order");
    }
  }

  for (const Request& r : requests_) {
    push_event(r.arrival_time, SimEventKind::kArrival, r.id, -1);
  }
  push_event(horizon_s_, SimEventKind::kEndOfRun, -1, -1);
  policy.on_init(*this);

  const std::size_t total = requests_.size();
  while (completed_ < total) {
    if (queue_.empty()) {
      throw Error("event queue drained with " +
                  std::to_string(total - completed_) +
                  " requests incomplete");
    }
    const SimEvent ev = queue_.top();
    queue_.pop();
    clock_ = ev.time;
    switch (ev.kind) {
      case SimEventKind::kArrival: {
        Request& r = request(ev.request);
        EventRecord arr;
        arr.t = clock_;
        arr.kind = EventKind::kArrival;
        arr.request = r.id;
        arr.input_len = r.orig_input_len;
        arr.gen_len = r.true_gen_len;
        log_.add(std::move(arr));
        policy.on_arrival(*this, r.id);
        break;
      }
      case SimEventKind::kScheduleTick:
        policy.on_tick(*this);
        break;
      case SimEventKind::kPolicyEvent:
        policy.on_policy_event(*this, ev.worker);
        break;
      case SimEventKind::kBatchDone: {
        WorkerSim& w = worker(ev.worker);
        Batch batch = std::move(*w.in_flight);
        const int served_l_out = w.in_flight_l_out;
        w.in_flight.reset();
        policy.on_batch_done(*this, ev.worker, batch, served_l_out);
        start_next_batch(ev.worker);
        break;
      }
      case SimEventKind::kEndOfRun:
        throw NonTerminationError(
            "simulated clock reached horizon " + std::to_string(horizon_s_) +
            " s with " + std::to_string(completed_) + " of " +
            std::to_string(total) + " requests completed");
    }
  }
  return std::move(log_);
}

}  // namespace slicesim
