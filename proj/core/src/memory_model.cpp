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

#include "slicesim/memory_model.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "slicesim/errors.h"

#include "json.hpp"

namespace slicesim {

double kv_cache_mem(double delta_bytes_per_token, int n, int l_in, int l_out) {
  return (static_cast<double>(l_in) + static_cast<double>(l_out)) *
         static_cast<double>(n) * delta_bytes_per_token;
}

MemoryModel MemoryModel::analytic(double m_cap, double m_model, double m_engine,
                                  double delta, double zeta) {
  MemoryModel m;
  m.kind = Kind::kAnalytic;
  m.m_cap = m_cap;
  m.m_model = m_model;
  m.m_engine = m_engine;
  m.delta = delta;
  m.zeta = zeta;
  validate(m);
  return m;
}

MemoryModel MemoryModel::rule_table(std::vector<Rule> rules) {
  MemoryModel m;
  m.kind = Kind::kRuleTable;
  m.rules = std::move(rules);
  validate(m);
  return m;
}

double MemoryModel::available_mem() const {
  if (kind != Kind::kAnalytic) {
    throw WrongKindError("available_mem is only defined for analytic memory models");
  }
  return m_cap - m_model - m_engine;
}

bool MemoryModel::would_oom(int n, int l_in, int slice_len) const {
  if (kind == Kind::kAnalytic) {
    return kv_cache_mem(delta, n, l_in, slice_len) > zeta * available_mem();
  }
  const int total = l_in + slice_len;
  for (const Rule& r : rules) {
    if (total > r.total_len_threshold) return n > r.max_batch_size;
  }
  return n > rules.back().max_batch_size;
}

int MemoryModel::max_batch_size(int l_in, int slice_len) const {
  if (kind == Kind::kRuleTable) {
    const int total = l_in + slice_len;
    for (const Rule& r : rules) {
      if (total > r.total_len_threshold) return r.max_batch_size;
    }
    return rules.back().max_batch_size;
  }
  const double per_request = delta * (static_cast<double>(l_in) + slice_len);
  const double quotient = std::floor(zeta * available_mem() / per_request);
  if (quotient >= 1e9) return 1000000000;
  int n = static_cast<int>(quotient);
  if (n < 0) n = 0;
  // The floor can land one off the would_oom boundary after rounding; nudge
  // so the pair stays consistent.
  while (n > 0 && would_oom(n, l_in, slice_len)) --n;
  while (n < 1000000000 && !would_oom(n + 1, l_in, slice_len)) ++n;
  return n;
}

void validate(const MemoryModel& m) {
  if (m.kind == MemoryModel::Kind::kAnalytic) {
    for (double v : {m.m_cap, m.m_model, m.m_engine, m.delta, m.zeta}) {
      if (!std::isfinite(v)) throw Error("memory model has a non-finite field");
    }
    if (!(m.m_cap > m.m_model + m.m_engine)) {
      throw Error("memory model needs m_cap > m_model + m_engine");
    }
    if (!(m.delta > 0.0)) throw Error("memory model needs delta > 0");
    if (!(m.zeta > 0.0 && m.zeta <= 1.0)) {
      throw Error("memory model needs zeta in (0, 1]");
    }
    return;
  }
  if (m.rules.empty()) throw Error("rule-table memory model needs >= 1 row");
  for (size_t i = 0; i < m.rules.size(); ++i) {
    if (m.rules[i].max_batch_size < 1) {
      throw Error("rule-table max batch sizes must be >= 1");
    }
    if (i > 0) {
      if (m.rules[i].total_len_threshold >= m.rules[i - 1].total_len_threshold) {
        throw Error("rule-table thresholds must be strictly decreasing");
      }
      if (m.rules[i].max_batch_size < m.rules[i - 1].max_batch_size) {
        throw Error("rule-table max batch sizes must not decrease as thresholds do");
      }
    }
  }
}

std::string to_json(const MemoryModel& m) {
  nlohmann::json j;
  if (m.kind == MemoryModel::Kind::kAnalytic) {
    j = {{"kind", "analytic"}, {"m_cap", m.m_cap},   {"m_model", m.m_model},
         {"m_engine", m.m_engine}, {"delta", m.delta}, {"zeta", m.zeta}};
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : m.rules) {
      rows.push_back({{"threshold", r.total_len_threshold},
                      {"max_n", r.max_batch_size}});
    }
    j = {{"kind", "rule_table"}, {"rows", rows}};
  }
  return j.dump(2);
}

MemoryModel memory_model_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("memory model JSON: ") + e.what());
  }
  MemoryModel m;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "analytic") {
      m.kind = MemoryModel::Kind::kAnalytic;
      m.m_cap = j.at("m_cap").get<double>();
      m.m_model = j.at("m_model").get<double>();
      m.m_engine = j.at("m_engine").get<double>();
      m.delta = j.at("delta").get<double>();
      m.zeta = j.value("zeta", 1.0);
    } else if (kind == "rule_table") {
      m.kind = MemoryModel::Kind::kRuleTable;
      for (const auto& row : j.at("rows")) {
        m.rules.push_back({row.at("threshold").get<int>(),
                           row.at("max_n").get<int>()});
      }
    } else {
      throw ParseError(1, "memory model kind must be analytic or rule_table");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("memory model JSON: ") + e.what());
  }
  validate(m);
  return m;
}

MemoryModel load_memory_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open memory model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return memory_model_from_json(buf.str());
}

void save_memory_model(const MemoryModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write memory model file: " + path);
  out << to_json(m) << "\n";
}

}  // namespace slicesim
