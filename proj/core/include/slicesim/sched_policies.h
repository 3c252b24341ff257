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

#ifndef SLICESIM_SCHED_POLICIES_H_
#define SLICESIM_SCHED_POLICIES_H_

#include <deque>
#include <memory>
#include <string>
#include <vector>

#include "slicesim/request.h"

namespace slicesim {

class Simulator;

enum class PolicyKind {
  kScls,  // slice-level scheduling: pooled requests, DP batching, max-min placement
  kSls,   // static batching baseline: round-robin, fixed batch size
  kIls,   // continuous batching baseline: round-robin, concurrency cap
};

std::string to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(const std::string& name);

struct SchedulerConfig {
  PolicyKind policy = PolicyKind::kScls;
  int slice_len = 128;       // tokens generated per schedule round (SCLS)
  int max_gen_limit = 1024;  // hard cap on tokens generated per request
  double lambda = 0.5;       // interval scale on the minimum worker load
  double gamma = 3.0;        // seconds, lower bound on the schedule interval
  int fixed_batch_size = 12; // SLS batch size
  int max_concurrent = 12;   // ILS cap on simultaneously decoding requests
  int worker_count = 8;
};

void validate(const SchedulerConfig& cfg);

// Adaptive schedule interval: max(lambda * min_load, gamma). The load floor
// keeps the scheduler from spinning when workers are idle; the lambda term
// defers the next pass while every worker still has queued work.
double next_interval(double lambda, double gamma, double min_load_s);

// Event hooks a policy implements against the simulation engine. All hooks
// run on the single simulation thread.
class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual void on_init(Simulator& sim) = 0;
  virtual void on_arrival(Simulator& sim, RequestId id) = 0;
  virtual void on_tick(Simulator& sim);
  virtual void on_policy_event(Simulator& sim, WorkerId worker);
  virtual void on_batch_done(Simulator& sim, WorkerId worker,
                             const Batch& batch, int served_l_out);
};

// Slice-level scheduling. Arrivals collect in a pool; each tick drains the
// pool, forms cost-minimal batches of one slice each, places them max-min
// by estimated serve time, and schedules the next tick adaptively.
// Unfinished batch members return to the pool with their generated tokens
// folded into the effective input length.
class SclsScheduler : public Scheduler {
 public:
  void on_init(Simulator& sim) override;
  void on_arrival(Simulator& sim, RequestId id) override;
  void on_tick(Simulator& sim) override;
  void on_batch_done(Simulator& sim, WorkerId worker, const Batch& batch,
                     int served_l_out) override;

 private:
  std::vector<RequestId> pool_;
  BatchId next_batch_id_ = 0;
};

// Static batching baseline. Requests go to workers round-robin at arrival;
// each worker serves FCFS batches of up to fixed_batch_size, starting
// immediately when idle. A batch runs until its longest member finishes,
// so shorter members accrue invalid tokens while they wait.
class SlsScheduler : public Scheduler {
 public:
  void on_init(Simulator& sim) override;
  void on_arrival(Simulator& sim, RequestId id) override;
  void on_policy_event(Simulator& sim, WorkerId worker) override;
  void on_batch_done(Simulator& sim, WorkerId worker, const Batch& batch,
                     int served_l_out) override;

 private:
  void try_dispatch(Simulator& sim, WorkerId worker);

  std::vector<std::deque<RequestId>> pending_;
  long long rr_ = 0;
  BatchId next_batch_id_ = 0;
};

// Continuous batching baseline. Requests go to instances round-robin at
// arrival; each instance decodes at iteration granularity, admitting
// waiting requests up to max_concurrent at iteration boundaries and
// retiring members the moment they finish. A joining request pays its
// prefill inside the iteration it joins. Membership-stable iteration runs
// are logged as one batch record each.
class IlsScheduler : public Scheduler {
 public:
  void on_init(Simulator& sim) override;
  void on_arrival(Simulator& sim, RequestId id) override;
  void on_policy_event(Simulator& sim, WorkerId worker) override;

 private:
  struct Instance {
    std::vector<RequestId> running;
    std::deque<RequestId> waiting;
    bool boundary_scheduled = false;
    BatchId segment_id = -1;
    int segment_n = 0;
    int segment_l_in = 0;
    int segment_iterations = 0;
  };

  std::vector<Instance> instances_;
  long long rr_ = 0;
  BatchId next_batch_id_ = 0;
};

std::unique_ptr<Scheduler> make_scheduler(PolicyKind kind);

}  // namespace slicesim

#endif  // SLICESIM_SCHED_POLICIES_H_
