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

#include "slicesim/sched_policies.h"

#include <algorithm>
#include <limits>
#include <utility>

#include "slicesim/batcher.h"
#include "slicesim/errors.h"
#include "slicesim/offloader.h"
#include "slicesim/sim_engine.h"

namespace slicesim {

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kScls: return "scls";
    case PolicyKind::kSls: return "sls";
    case PolicyKind::kIls: return "ils";
  }
  return "unknown";
}

PolicyKind policy_kind_from_string(const std::string& name) {
  if (name == "scls") return PolicyKind::kScls;
  if (name == "sls") return PolicyKind::kSls;
  if (name == "ils") return PolicyKind::kIls;
  throw Error("unknown policy '" + name + "' (expected scls, sls, or ils)");
}

void validate(const SchedulerConfig& cfg) {
  if (!(cfg.lambda > 0.0 && cfg.lambda < 1.0)) {
    throw Error("lambda must lie in (0, 1)");
  }
  if (!(cfg.gamma > 0.0)) throw Error("gamma must be > 0");
  if (cfg.slice_len < 1) throw Error("slice_len must be >= 1");
  if (cfg.max_gen_limit < cfg.slice_len) {
    throw Error("slice_len must not exceed max_gen_limit");
  }
  if (cfg.fixed_batch_size < 1) throw Error("fixed_batch_size must be >= 1");
  if (cfg.max_concurrent < 1) throw Error("max_concurrent must be >= 1");
  if (cfg.worker_count < 1) throw Error("worker_count must be >= 1");
}

double next_interval(double lambda, double gamma, double min_load_s) {
  return std::max(lambda * min_load_s, gamma);
}

void Scheduler::on_tick(Simulator&) {}
void Scheduler::on_policy_event(Simulator&, WorkerId) {}
void Scheduler::on_batch_done(Simulator&, WorkerId, const Batch&, int) {}

namespace {

// Output length a slice batch actually runs for: the full slice unless
// every member reaches EOS earlier, in which case the batch returns at the
// longest member's remaining length.
int slice_served_l_out(const Simulator& sim, const Batch& batch,
                       int slice_len) {
  int served = 0;
  for (RequestId id : batch.requests) {
    served = std::max(served,
                      std::min(sim.request(id).remaining_gen(), slice_len));
  }
  return served;
}

}  // namespace

void SclsScheduler::on_init(Simulator& sim) { sim.schedule_tick(0.0); }

void SclsScheduler::on_arrival(Simulator&, RequestId id) {
  pool_.push_back(id);
}

void SclsScheduler::on_tick(Simulator& sim) {
  const SchedulerConfig& cfg = sim.config();

  std::vector<Batch> batches;
  if (!pool_.empty()) {
    std::vector<Request> pending;
    pending.reserve(pool_.size());
    for (RequestId id : pool_) pending.push_back(sim.request(id));
    pool_.clear();
    batches = batch_requests(pending, cfg.slice_len, sim.latency(),
                             sim.memory(), next_batch_id_);
    next_batch_id_ += static_cast<BatchId>(batches.size());
  }

  std::vector<WorkerLoad> loads;
  loads.reserve(sim.workers().size());
  for (const WorkerSim& w : sim.workers()) {
    loads.push_back(WorkerLoad{w.id, w.load_estimate});
  }
  const auto assignments = offload(batches, loads);
  for (const WorkerLoad& l : loads) {
    sim.worker(l.worker_id).load_estimate = l.load_estimate;
  }

  for (const auto& [batch_id, worker_id] : assignments) {
    Batch& batch = batches[static_cast<std::size_t>(batch_id - batches[0].id)];
    EventRecord dispatch;
    dispatch.t = sim.clock();
    dispatch.kind = EventKind::kDispatch;
    dispatch.worker = worker_id;
    dispatch.batch = batch.id;
    dispatch.n = batch.n();
    dispatch.l_in = batch.l_in;
    dispatch.planned_l_out = batch.planned_l_out;
    dispatch.est_serve_s = batch.est_serve_time;
    sim.log().add(std::move(dispatch));
    for (RequestId id : batch.requests) {
      Request& r = sim.request(id);
      if (!r.first_dispatch_time) r.first_dispatch_time = sim.clock();
    }
    const int served = slice_served_l_out(sim, batch, cfg.slice_len);
    sim.enqueue_batch(worker_id, std::move(batch), served);
  }

  double min_load = std::numeric_limits<double>::infinity();
  for (const WorkerSim& w : sim.workers()) {
    min_load = std::min(min_load, w.load_estimate);
  }
  const double interval = next_interval(cfg.lambda, cfg.gamma, min_load);

  EventRecord tick;
  tick.t = sim.clock();
  tick.kind = EventKind::kTick;
  tick.n = static_cast<int>(assignments.size());
  tick.next_interval_s = interval;
  sim.log().add(std::move(tick));
  sim.schedule_tick(sim.clock() + interval);
}

void SclsScheduler::on_batch_done(Simulator& sim, WorkerId worker,
                                  const Batch& batch, int served_l_out) {
  const SchedulerConfig& cfg = sim.config();

  EventRecord end;
  end.t = sim.clock();
  end.kind = EventKind::kBatchEnd;
  end.worker = worker;
  end.batch = batch.id;
  end.n = batch.n();
  end.l_in = batch.l_in;
  end.planned_l_out = batch.planned_l_out;
  end.served_l_out = served_l_out;

  std::vector<RequestId> finished;
  for (RequestId id : batch.requests) {
    Request& r = sim.request(id);
    MemberAccounting m;
    m.request = id;
    m.effective_input = r.effective_input_len();
    m.pad = batch.l_in - m.effective_input;
    m.gen = std::min(r.remaining_gen(), served_l_out);
    m.invalid = served_l_out - m.gen;
    end.members.push_back(m);

    r.generated_so_far += m.gen;
    r.slices_served += 1;
    if (r.done() || r.generated_so_far >= cfg.max_gen_limit) {
      finished.push_back(id);
    } else {
      pool_.push_back(id);
    }
  }
  sim.log().add(std::move(end));
  for (RequestId id : finished) sim.complete_request(id, worker);

  WorkerLoad load{worker, sim.worker(worker).load_estimate};
  complete_batch(load, batch.est_serve_time);
  sim.worker(worker).load_estimate = load.load_estimate;
}

void SlsScheduler::on_init(Simulator& sim) {
  pending_.assign(static_cast<std::size_t>(sim.config().worker_count), {});
}

void SlsScheduler::on_arrival(Simulator& sim, RequestId id) {
  const WorkerId worker =
      static_cast<WorkerId>(rr_++ % sim.config().worker_count);
  pending_[static_cast<std::size_t>(worker)].push_back(id);
  // Defer the dispatch check behind any arrivals sharing this instant so
  // simultaneous requests can fill one batch.
  sim.schedule_policy_event(sim.clock(), worker);
}

void SlsScheduler::on_policy_event(Simulator& sim, WorkerId worker) {
  try_dispatch(sim, worker);
}

void SlsScheduler::try_dispatch(Simulator& sim, WorkerId worker) {
  WorkerSim& w = sim.worker(worker);
  auto& queue = pending_[static_cast<std::size_t>(worker)];
  if (!w.idle() || !w.local_queue.empty() || queue.empty()) return;

  const SchedulerConfig& cfg = sim.config();
  Batch batch;
  batch.id = next_batch_id_++;
  const int take =
      std::min<int>(cfg.fixed_batch_size, static_cast<int>(queue.size()));
  int l_out = 0;
  for (int i = 0; i < take; ++i) {
    const RequestId id = queue.front();
    queue.pop_front();
    Request& r = sim.request(id);
    batch.requests.push_back(id);
    batch.l_in = std::max(batch.l_in, r.orig_input_len);
    l_out = std::max(l_out, std::min(r.true_gen_len, cfg.max_gen_limit));
    if (!r.first_dispatch_time) r.first_dispatch_time = sim.clock();
  }
  batch.planned_l_out = l_out;
  batch.est_serve_time =
      batch_serve_time(sim.latency(), batch.n(), batch.l_in, l_out);

  EventRecord dispatch;
  dispatch.t = sim.clock();
  dispatch.kind = EventKind::kDispatch;
  dispatch.worker = worker;
  dispatch.batch = batch.id;
  dispatch.n = batch.n();
  dispatch.l_in = batch.l_in;
  dispatch.planned_l_out = batch.planned_l_out;
  dispatch.est_serve_s = batch.est_serve_time;
  sim.log().add(std::move(dispatch));

  sim.enqueue_batch(worker, std::move(batch), l_out);
}

void SlsScheduler::on_batch_done(Simulator& sim, WorkerId worker,
                                 const Batch& batch, int served_l_out) {
  EventRecord end;
  end.t = sim.clock();
  end.kind = EventKind::kBatchEnd;
  end.worker = worker;
  end.batch = batch.id;
  end.n = batch.n();
  end.l_in = batch.l_in;
  end.planned_l_out = batch.planned_l_out;
  end.served_l_out = served_l_out;

  for (RequestId id : batch.requests) {
    Request& r = sim.request(id);
    MemberAccounting m;
    m.request = id;
    m.effective_input = r.orig_input_len;
    m.pad = batch.l_in - r.orig_input_len;
    m.gen = std::min(r.true_gen_len, sim.config().max_gen_limit);
    m.invalid = served_l_out - m.gen;
    end.members.push_back(m);
    r.generated_so_far = m.gen;
    r.slices_served = 1;
  }
  sim.log().add(std::move(end));
  for (RequestId id : batch.requests) sim.complete_request(id, worker);

  try_dispatch(sim, worker);
}

void IlsScheduler::on_init(Simulator& sim) {
  instances_.assign(static_cast<std::size_t>(sim.config().worker_count), {});
}

void IlsScheduler::on_arrival(Simulator& sim, RequestId id) {
  const WorkerId worker =
      static_cast<WorkerId>(rr_++ % sim.config().worker_count);
  Instance& inst = instances_[static_cast<std::size_t>(worker)];
  inst.waiting.push_back(id);
  if (inst.running.empty() && !inst.boundary_scheduled) {
    // Wake the idle instance; the boundary fires after all arrivals that
    // share this instant, so they join the same first iteration.
    sim.schedule_policy_event(sim.clock(), worker);
    inst.boundary_scheduled = true;
  }
}

void IlsScheduler::on_policy_event(Simulator& sim, WorkerId worker) {
  const SchedulerConfig& cfg = sim.config();
  Instance& inst = instances_[static_cast<std::size_t>(worker)];
  const double now = sim.clock();

  // An iteration just finished (unless this is an idle wake-up): every
  // running request gained one token.
  std::vector<RequestId> exits;
  if (!inst.running.empty()) {
    inst.segment_iterations += 1;
    for (RequestId id : inst.running) {
      Request& r = sim.request(id);
      r.generated_so_far += 1;
      if (r.done() || r.generated_so_far >= cfg.max_gen_limit) {
        exits.push_back(id);
      }
    }
    for (RequestId id : exits) {
      inst.running.erase(
          std::find(inst.running.begin(), inst.running.end(), id));
    }
  }

  std::vector<RequestId> joins;
  while (static_cast<int>(inst.running.size()) < cfg.max_concurrent &&
         !inst.waiting.empty()) {
    const RequestId id = inst.waiting.front();
    inst.waiting.pop_front();
    inst.running.push_back(id);
    joins.push_back(id);
  }

  const bool membership_changed = !exits.empty() || !joins.empty();
  if (membership_changed && inst.segment_id >= 0 &&
      inst.segment_iterations > 0) {
    EventRecord end;
    end.t = now;
    end.kind = EventKind::kBatchEnd;
    end.worker = worker;
    end.batch = inst.segment_id;
    end.n = inst.segment_n;
    end.l_in = inst.segment_l_in;
    end.planned_l_out = inst.segment_iterations;
    end.served_l_out = inst.segment_iterations;
    sim.log().add(std::move(end));
    inst.segment_id = -1;
  }
  for (RequestId id : exits) sim.complete_request(id, worker);

  if (inst.running.empty()) {
    inst.boundary_scheduled = false;
    return;
  }

  int max_context = 0;
  for (RequestId id : inst.running) {
    max_context = std::max(max_context, sim.request(id).effective_input_len());
  }

  if (membership_changed) {
    inst.segment_id = next_batch_id_++;
    inst.segment_n = static_cast<int>(inst.running.size());
    inst.segment_l_in = max_context;
    inst.segment_iterations = 0;

    EventRecord start;
    start.t = now;
    start.kind = EventKind::kBatchStart;
    start.worker = worker;
    start.batch = inst.segment_id;
    start.n = inst.segment_n;
    start.l_in = inst.segment_l_in;
    sim.log().add(std::move(start));
  }

  double iteration_s =
      decode_step_time(sim.latency(), max_context,
                       static_cast<int>(inst.running.size()));
  for (RequestId id : joins) {
    Request& r = sim.request(id);
    r.slices_served = 1;
    if (!r.first_dispatch_time) r.first_dispatch_time = now;
    iteration_s += prefill_time(sim.latency(), 1, r.orig_input_len);

    EventRecord dispatch;
    dispatch.t = now;
    dispatch.kind = EventKind::kDispatch;
    dispatch.worker = worker;
    dispatch.batch = inst.segment_id;
    dispatch.request = id;
    dispatch.n = 1;
    dispatch.l_in = r.orig_input_len;
    dispatch.planned_l_out = r.remaining_gen();
    dispatch.est_serve_s = 0.0;
    sim.log().add(std::move(dispatch));
  }

  sim.schedule_policy_event(now + iteration_s, worker);
  inst.boundary_scheduled = true;
}

std::unique_ptr<Scheduler> make_scheduler(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kScls: return std::make_unique<SclsScheduler>();
    case PolicyKind::kSls: return std::make_unique<SlsScheduler>();
    case PolicyKind::kIls: return std::make_unique<IlsScheduler>();
  }
  throw Error("unreachable policy kind");
}

}  // namespace slicesim
