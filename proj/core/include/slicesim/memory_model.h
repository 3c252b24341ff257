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

#ifndef SLICESIM_MEMORY_MODEL_H_
#define SLICESIM_MEMORY_MODEL_H_

#include <string>
#include <vector>

namespace slicesim {

// KV-cache bytes for a padded static batch: every token, pad tokens
// included, occupies `delta` bytes once cached.
double kv_cache_mem(double delta_bytes_per_token, int n, int l_in, int l_out);

// Decides whether a candidate (batch size, batch input length, slice length)
// would run out of GPU memory. Two profiles:
//   Analytic  - KV bytes against a fraction zeta of the free capacity.
//   RuleTable - profiled (total length threshold, max batch size) rows for
//               engines whose memory behavior resists the analytic form.
// Immutable after construction; shareable across threads.
struct MemoryModel {
  enum class Kind { kAnalytic, kRuleTable };

  struct Rule {
    int total_len_threshold = 0;  // row applies when l_in + slice > threshold
    int max_batch_size = 1;
  };

  Kind kind = Kind::kAnalytic;
  // Analytic fields.
  double m_cap = 0.0;     // GPU memory capacity, bytes
  double m_model = 0.0;   // bytes held by model parameters
  double m_engine = 0.0;  // bytes held by engine-specific data
  double delta = 1.0;     // bytes per cached token
  double zeta = 1.0;      // usable fraction of free memory, in (0, 1]
  // RuleTable rows, thresholds strictly decreasing; the last row is the
  // catch-all for short batches.
  std::vector<Rule> rules;

  static MemoryModel analytic(double m_cap, double m_model, double m_engine,
                              double delta, double zeta = 1.0);
  static MemoryModel rule_table(std::vector<Rule> rules);

  // Capacity left for KV cache: m_cap - m_model - m_engine. Analytic only;
  // throws WrongKindError on a rule table.
  double available_mem() const;

  // True iff serving (n, l_in, slice_len) would exceed memory.
  bool would_oom(int n, int l_in, int slice_len) const;

  // Largest batch size that fits at this batch input length and slice
  // length; 0 when nothing fits. Exact boundary of would_oom in n.
  int max_batch_size(int l_in, int slice_len) const;
};

// Throws Error when the invariants fail: analytic needs
// m_cap > m_model + m_engine, delta > 0, 0 < zeta <= 1; rule tables need
// strictly decreasing thresholds with non-decreasing batch sizes.
void validate(const MemoryModel& m);

// JSON: {"kind":"analytic", m_cap, m_model, m_engine, delta, zeta} or
// {"kind":"rule_table", "rows":[{"threshold":..,"max_n":..},..]}.
std::string to_json(const MemoryModel& m);
MemoryModel memory_model_from_json(const std::string& json_text);
MemoryModel load_memory_model(const std::string& path);
void save_memory_model(const MemoryModel& m, const std::string& path);

}  // namespace slicesim

#endif  // SLICESIM_MEMORY_MODEL_H_
