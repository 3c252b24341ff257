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

#include "slicesim/batcher.h"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "slicesim/cost_model.h"
#include "slicesim/errors.h"
#include "slicesim/memory_model.h"
#include "slicesim/workload.h"

namespace slicesim {
namespace {

LatencyModel reference_model() {
  LatencyModel m;
  m.p1 = 2e-6;
  m.p2 = 1e-3;
  m.p3 = 5e-5;
  m.p4 = 0.02;
  m.d1 = 1e-7;
  m.d2 = 2e-4;
  m.d3 = 3e-6;
  m.d4 = 0.01;
  return m;
}

// A model where padding cost dominates the per-batch fixed cost, so mixing a
// long request into a batch of short ones is expensive.
LatencyModel padding_heavy_model() {
  LatencyModel m;
  m.p1 = 1e-4;
  m.p2 = 1e-6;
  m.p3 = 1e-6;
  m.p4 = 1e-6;
  m.d1 = 1e-5;
  m.d2 = 1e-8;
  m.d3 = 1e-8;
  m.d4 = 1e-8;
  return m;
}

MemoryModel engine_rule_table() {
  return MemoryModel::rule_table({{1024, 12}, {512, 22}, {0, 28}});
}

Request make_request(RequestId id, int orig_input, int generated = 0,
                     double arrival = 0.0) {
  Request r;
  r.id = id;
  r.arrival_time = arrival;
  r.orig_input_len = orig_input;
  r.true_gen_len = 1024;
  r.generated_so_far = generated;
  return r;
}

std::vector<Request> batcher_sorted(std::vector<Request> requests) {
  std::sort(requests.begin(), requests.end(),
            [](const Request& a, const Request& b) {
              if (a.effective_input_len() != b.effective_input_len())
                return a.effective_input_len() < b.effective_input_len();
              if (a.arrival_time != b.arrival_time)
                return a.arrival_time < b.arrival_time;
              return a.id < b.id;
            });
  return requests;
}

// Exhaustive minimum over every contiguous partition of the sorted requests,
// accumulating segment costs left to right exactly as the planner does. Only
// usable for small n (2^(n-1) partitions).
double brute_force_min_total(const std::vector<Request>& requests,
                             int slice_len, const LatencyModel& latency,
                             const MemoryModel& memory) {
  const std::vector<Request> sorted = batcher_sorted(requests);
  const int n = static_cast<int>(sorted.size());
  if (n == 0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    double total = 0.0;
    bool feasible = true;
    int start = 0;
    for (int i = 0; i < n; ++i) {
      const bool segment_ends = (i == n - 1) || ((mask >> i) & 1u);
      if (!segment_ends) continue;
      const int count = i - start + 1;
      const int l_in = sorted[i].effective_input_len();
      if (memory.would_oom(count, l_in, slice_len)) {
        feasible = false;
        break;
      }
      total += batch_serve_time(latency, count, l_in, slice_len);
      start = i + 1;
    }
    if (feasible && total < best) best = total;
  }
  return best;
}

double planned_total(const std::vector<Batch>& batches) {
  double total = 0.0;
  for (const Batch& b : batches) total += b.est_serve_time;
  return total;
}

TEST(BatchRequests, MatchesBruteForceOnRandomInstances) {
  const LatencyModel latency = reference_model();
  const MemoryModel rule_mem = engine_rule_table();
  // Analytic budget tight enough that long segments become infeasible.
  const MemoryModel tight_mem =
      MemoryModel::analytic(5005.0, 3.0, 2.0, 1.0, 1.0);
  std::mt19937_64 engine(20260815);
  for (int trial = 0; trial < 600; ++trial) {
    const int n = 1 + static_cast<int>(next_uniform(engine) * 10.0);
    std::vector<Request> requests;
    for (int i = 0; i < n; ++i) {
      const int input = 1 + static_cast<int>(next_uniform(engine) * 1399.0);
      const int generated =
          next_uniform(engine) < 0.3
              ? static_cast<int>(next_uniform(engine) * 256.0)
              : 0;
      requests.push_back(make_request(i, input, generated,
                                      next_uniform(engine) * 10.0));
    }
    const int slice = (trial % 2 == 0) ? 128 : 32;
    const MemoryModel& memory = (trial % 3 == 0) ? tight_mem : rule_mem;

    const std::vector<Batch> batches =
        batch_requests(requests, slice, latency, memory);
    const double oracle =
        brute_force_min_total(requests, slice, latency, memory);
    // Same arithmetic, same accumulation order: the totals must be
    // bit-identical, not merely close.
    ASSERT_EQ(planned_total(batches), oracle) << "trial " << trial;

    // The partition must cover the inputs exactly and respect memory.
    std::set<RequestId> seen;
    for (const Batch& b : batches) {
      ASSERT_GT(b.n(), 0);
      ASSERT_FALSE(memory.would_oom(b.n(), b.l_in, slice));
      ASSERT_EQ(b.planned_l_out, slice);
      for (RequestId id : b.requests) ASSERT_TRUE(seen.insert(id).second);
    }
    ASSERT_EQ(seen.size(), requests.size());
  }
}

TEST(BatchRequests, EmptyInputYieldsNoBatches) {
  EXPECT_TRUE(batch_requests({}, 128, reference_model(), engine_rule_table())
                  .empty());
}

TEST(BatchRequests, BatchIdsCountUpFromFirstId) {
  std::vector<Request> requests;
  for (int i = 0; i < 6; ++i) requests.push_back(make_request(i, 10 + 300 * i));
  const std::vector<Batch> batches = batch_requests(
      requests, 128, reference_model(), engine_rule_table(), 42);
  ASSERT_FALSE(batches.empty());
  for (std::size_t i = 0; i < batches.size(); ++i) {
    EXPECT_EQ(batches[i].id, 42 + static_cast<BatchId>(i));
  }
}

TEST(BatchRequests, PadsToSegmentMaxEffectiveInput) {
  // Three requests whose effective inputs are 50, 60 (40 orig + 20
  // generated), and 70. A small slice and generous memory keep them in one
  // batch for the reference model.
  std::vector<Request> requests = {make_request(0, 50), make_request(1, 40, 20),
                                   make_request(2, 70)};
  const std::vector<Batch> batches =
      batch_requests(requests, 16, reference_model(), engine_rule_table());
  ASSERT_EQ(batches.size(), 1u);
  EXPECT_EQ(batches[0].l_in, 70);
  EXPECT_EQ(batches[0].n(), 3);
  EXPECT_DOUBLE_EQ(batches[0].est_serve_time,
                   batch_serve_time(reference_model(), 3, 70, 16));
}

TEST(BatchRequests, IsolatesLongOutlierWhenPaddingDominates) {
  const LatencyModel latency = padding_heavy_model();
  std::vector<Request> requests;
  for (int i = 0; i < 8; ++i) requests.push_back(make_request(i, 10));
  requests.push_back(make_request(8, 1024));
  const std::vector<Batch> batches =
      batch_requests(requests, 128, latency, engine_rule_table());
  ASSERT_EQ(batches.size(), 2u);
  const Batch& last = batches.back();
  EXPECT_EQ(last.n(), 1);
  EXPECT_EQ(last.requests[0], 8);
  EXPECT_EQ(last.l_in, 1024);
  EXPECT_EQ(batches.front().n(), 8);
  EXPECT_EQ(batches.front().l_in, 10);
  // Strictly better than the single mixed batch it declined to form.
  EXPECT_LT(planned_total(batches), batch_serve_time(latency, 9, 1024, 128));
}

TEST(BatchRequests, TiesPreferTheSmallerTrailingBatch) {
  // prefill = n per batch, decode free: grouping and splitting cost the same,
  // so the planner must keep the first split it examined, which batches
  // nobody together.
  LatencyModel flat;
  flat.p2 = 1.0;
  std::vector<Request> requests = {make_request(0, 100), make_request(1, 100)};
  const std::vector<Batch> batches =
      batch_requests(requests, 128, flat, engine_rule_table());
  ASSERT_EQ(batches.size(), 2u);
  EXPECT_EQ(batches[0].n(), 1);
  EXPECT_EQ(batches[1].n(), 1);
}

TEST(BatchRequests, ThrowsWhenASingletonCannotFit) {
  const MemoryModel memory = MemoryModel::analytic(105.0, 3.0, 2.0, 1.0, 1.0);
  std::vector<Request> requests = {make_request(7, 200)};
  try {
    batch_requests(requests, 10, reference_model(), memory);
    FAIL() << "expected InfeasibleRequestError";
  } catch (const InfeasibleRequestError& e) {
    EXPECT_EQ(e.request_id, 7);
  }
}

TEST(BatchRequests, DeterministicAcrossCalls) {
  std::vector<Request> requests;
  std::mt19937_64 engine(7);
  for (int i = 0; i < 30; ++i) {
    requests.push_back(make_request(i,
                                    1 + static_cast<int>(next_uniform(engine) *
                                                         1200.0)));
  }
  const std::vector<Batch> a =
      batch_requests(requests, 128, reference_model(), engine_rule_table());
  const std::vector<Batch> b =
      batch_requests(requests, 128, reference_model(), engine_rule_table());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].requests, b[i].requests);
    EXPECT_EQ(a[i].l_in, b[i].l_in);
    EXPECT_EQ(a[i].est_serve_time, b[i].est_serve_time);
  }
}

TEST(BatchRequests, SegmentsFollowSortedEffectiveInputOrder) {
  // Identical inputs arriving out of id order: ties fall back to arrival
  // time then id, and segments are contiguous in that order.
  std::vector<Request> requests = {
      make_request(3, 600, 0, 2.0), make_request(1, 600, 0, 1.0),
      make_request(2, 10, 0, 3.0), make_request(0, 10, 0, 0.5)};
  const std::vector<Batch> batches =
      batch_requests(requests, 128, padding_heavy_model(),
                     engine_rule_table());
  ASSERT_EQ(batches.size(), 2u);
  EXPECT_EQ(batches[0].requests, (std::vector<RequestId>{0, 2}));
  EXPECT_EQ(batches[1].requests, (std::vector<RequestId>{1, 3}));
}

}  // namespace
}  // namespace slicesim
