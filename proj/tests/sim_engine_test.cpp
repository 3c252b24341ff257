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

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "slicesim/errors.h"
#include "slicesim/run_config.h"
#include "slicesim/workload.h"

namespace slicesim {
namespace {

SchedulerConfig scls_config(int workers) {
  SchedulerConfig cfg;
  cfg.policy = PolicyKind::kScls;
  cfg.worker_count = workers;
  return cfg;
}

Request make_request(RequestId id, double arrival, int input, int gen) {
  Request r;
  r.id = id;
  r.arrival_time = arrival;
  r.orig_input_len = input;
  r.true_gen_len = gen;
  return r;
}

EventLog run_policy(const SchedulerConfig& cfg, std::vector<Request> workload,
                    double horizon = 1e7) {
  Simulator sim(cfg, builtin_latency_model(), builtin_memory_model(), horizon);
  auto policy = make_scheduler(cfg.policy);
  return sim.run(std::move(workload), *policy);
}

std::string to_jsonl_string(const EventLog& log) {
  std::ostringstream out;
  log.to_jsonl(out);
  return out.str();
}

TEST(Simulator, SingleShortRequestMatchesHandComputedResponse) {
  // One request, generation shorter than the slice: the tick at t=0 forms a
  // singleton batch and the early-return rule serves exactly the remaining
  // 100 tokens, so the response time is one batch serve time.
  const LatencyModel latency = builtin_latency_model();
  const std::vector<Request> workload = {make_request(0, 0.0, 100, 100)};
  const EventLog log = run_policy(scls_config(1), workload);

  const double expected = batch_serve_time(latency, 1, 100, 100);
  int completes = 0;
  for (const EventRecord& e : log.events) {
    if (e.kind == EventKind::kComplete) {
      ++completes;
      EXPECT_EQ(e.request, 0);
      EXPECT_DOUBLE_EQ(e.response_s, expected);
      EXPECT_DOUBLE_EQ(e.t, expected);
      EXPECT_EQ(e.slices, 1);
    }
    if (e.kind == EventKind::kBatchEnd) {
      EXPECT_EQ(e.n, 1);
      EXPECT_EQ(e.l_in, 100);
      EXPECT_EQ(e.planned_l_out, 128);
      EXPECT_EQ(e.served_l_out, 100);
    }
  }
  EXPECT_EQ(completes, 1);
}

TEST(Simulator, EmptyWorkloadProducesAnEmptyLog) {
  const EventLog log = run_policy(scls_config(2), {});
  EXPECT_TRUE(log.empty());
  EXPECT_EQ(log.worker_count, 2);
}

TEST(Simulator, RunsAreByteIdenticalAcrossInvocations) {
  WorkloadSpec spec;
  spec.rate = 20.0;
  spec.duration_s = 20.0;
  spec.input_len_dist = codefuse_like_input_dist();
  spec.gen_len_dist = codefuse_like_gen_dist();
  const std::vector<Request> workload = generate(spec);
  ASSERT_GT(workload.size(), 100u);

  for (PolicyKind kind :
       {PolicyKind::kScls, PolicyKind::kSls, PolicyKind::kIls}) {
    SchedulerConfig cfg = scls_config(4);
    cfg.policy = kind;
    const std::string a = to_jsonl_string(run_policy(cfg, workload));
    const std::string b = to_jsonl_string(run_policy(cfg, workload));
    EXPECT_EQ(a, b) << to_string(kind);
    EXPECT_FALSE(a.empty());
  }
}

TEST(Simulator, EventTimesNeverGoBackwards) {
  WorkloadSpec spec;
  spec.rate = 20.0;
  spec.duration_s = 15.0;
  const EventLog log = run_policy(scls_config(3), generate(spec));
  double last = 0.0;
  for (const EventRecord& e : log.events) {
    ASSERT_GE(e.t, last);
    last = e.t;
  }
}

TEST(Simulator, WorkersServeOneBatchAtATime) {
  WorkloadSpec spec;
  spec.rate = 30.0;
  spec.duration_s = 15.0;
  for (PolicyKind kind :
       {PolicyKind::kScls, PolicyKind::kSls, PolicyKind::kIls}) {
    SchedulerConfig cfg = scls_config(3);
    cfg.policy = kind;
    const EventLog log = run_policy(cfg, generate(spec));
    // Per worker, starts and ends must alternate with non-overlapping spans.
    std::map<WorkerId, double> open_since;
    std::map<WorkerId, double> last_end;
    for (const EventRecord& e : log.events) {
      if (e.kind == EventKind::kBatchStart) {
        ASSERT_EQ(open_since.count(e.worker), 0u) << to_string(kind);
        ASSERT_GE(e.t, last_end[e.worker]);
        open_since[e.worker] = e.t;
      } else if (e.kind == EventKind::kBatchEnd) {
        ASSERT_EQ(open_since.count(e.worker), 1u) << to_string(kind);
        ASSERT_GE(e.t, open_since[e.worker]);
        open_since.erase(e.worker);
        last_end[e.worker] = e.t;
      }
    }
    EXPECT_TRUE(open_since.empty()) << to_string(kind);
  }
}

TEST(Simulator, EveryArrivalEventuallyCompletes) {
  WorkloadSpec spec;
  spec.rate = 25.0;
  spec.duration_s = 20.0;
  const std::vector<Request> workload = generate(spec);
  for (PolicyKind kind :
       {PolicyKind::kScls, PolicyKind::kSls, PolicyKind::kIls}) {
    SchedulerConfig cfg = scls_config(4);
    cfg.policy = kind;
    const EventLog log = run_policy(cfg, workload);
    std::set<RequestId> arrived;
    std::set<RequestId> completed;
    for (const EventRecord& e : log.events) {
      if (e.kind == EventKind::kArrival) arrived.insert(e.request);
      if (e.kind == EventKind::kComplete) {
        EXPECT_TRUE(completed.insert(e.request).second) << to_string(kind);
      }
    }
    EXPECT_EQ(arrived.size(), workload.size()) << to_string(kind);
    EXPECT_EQ(arrived, completed) << to_string(kind);
  }
}

TEST(Simulator, QueuedBatchStartsTheInstantTheWorkerFrees) {
  // One worker, 24 simultaneous arrivals under the fixed-batch baseline:
  // two full batches, the second starting exactly when the first ends.
  SchedulerConfig cfg = scls_config(1);
  cfg.policy = PolicyKind::kSls;
  cfg.fixed_batch_size = 12;
  std::vector<Request> workload;
  for (int i = 0; i < 24; ++i) {
    workload.push_back(make_request(i, 0.0, 50, 60));
  }
  const EventLog log = run_policy(cfg, workload);
  std::vector<double> starts;
  std::vector<double> ends;
  for (const EventRecord& e : log.events) {
    if (e.kind == EventKind::kBatchStart) {
      EXPECT_EQ(e.n, 12);
      starts.push_back(e.t);
    }
    if (e.kind == EventKind::kBatchEnd) ends.push_back(e.t);
  }
  ASSERT_EQ(starts.size(), 2u);
  ASSERT_EQ(ends.size(), 2u);
  EXPECT_DOUBLE_EQ(starts[0], 0.0);
  EXPECT_EQ(starts[1], ends[0]);
}

TEST(Simulator, ThrowsWhenTheHorizonPassesBeforeCompletion) {
  WorkloadSpec spec;
  spec.rate = 20.0;
  spec.duration_s = 10.0;
  EXPECT_THROW(run_policy(scls_config(1), generate(spec), 0.5),
               NonTerminationError);
}

TEST(Simulator, RejectsWorkloadsWithGappyIds) {
  std::vector<Request> workload = {make_request(0, 0.0, 10, 10),
                                   make_request(2, 1.0, 10, 10)};
  EXPECT_THROW(run_policy(scls_config(1), workload), Error);
}

TEST(Simulator, RejectsBrokenConfiguration) {
  SchedulerConfig cfg = scls_config(0);
  EXPECT_THROW(Simulator(cfg, builtin_latency_model(), builtin_memory_model()),
               Error);
  EXPECT_THROW(Simulator(scls_config(1), builtin_latency_model(),
                         builtin_memory_model(), -5.0),
               Error);
}

}  // namespace
}  // namespace slicesim
