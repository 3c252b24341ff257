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

#include "slicesim/run_config.h"

#include <fstream>
#include <sstream>
#include <vector>

#include "slicesim/errors.h"

namespace slicesim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error("value for " + key + " is not an integer: '" + value + "'");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error("value for " + key + " is not a number: '" + value + "'");
  }
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw Error("value for " + key + " is not a seed: '" + value + "'");
  }
}

LengthDist parse_dist(const std::string& key, const std::string& value) {
  const auto parts = split(value, ':');
  if (parts.empty()) throw Error("empty distribution for " + key);
  if (parts[0] == "uniform" && parts.size() == 3) {
    return LengthDist::uniform(parse_int(key, parts[1]),
                               parse_int(key, parts[2]));
  }
  if (parts[0] == "lognormal" && parts.size() == 4) {
    return LengthDist::log_normal(parse_double(key, parts[1]),
                                  parse_double(key, parts[2]),
                                  parse_int(key, parts[3]));
  }
  if (parts[0] == "hist" && parts.size() == 2) {
    const auto sides = split(parts[1], '=');
    if (sides.size() == 2) {
      std::vector<int> edges;
      for (const auto& e : split(sides[0], ',')) {
        edges.push_back(parse_int(key, e));
      }
      std::vector<double> weights;
      for (const auto& w : split(sides[1], ',')) {
        weights.push_back(parse_double(key, w));
      }
      return LengthDist::histogram(std::move(edges), std::move(weights));
    }
  }
  throw Error("cannot parse distribution for " + key + ": '" + value +
              "' (expected uniform:LO:HI, lognormal:MU:SIGMA:CAP, or "
              "hist:E0,E1,...=W0,W1,...)");
}

}  // namespace

RunConfig default_run_config() {
  RunConfig cfg;
  cfg.workload.input_len_dist = codefuse_like_input_dist();
  cfg.workload.gen_len_dist = codefuse_like_gen_dist();
  return cfg;
}

void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "policy.kind") {
    cfg.sched.policy = policy_kind_from_string(value);
  } else if (key == "policy.slice_len") {
    cfg.sched.slice_len = parse_int(key, value);
  } else if (key == "policy.max_gen_limit") {
    cfg.sched.max_gen_limit = parse_int(key, value);
  } else if (key == "policy.lambda") {
    cfg.sched.lambda = parse_double(key, value);
  } else if (key == "policy.gamma") {
    cfg.sched.gamma = parse_double(key, value);
  } else if (key == "policy.fixed_batch_size") {
    cfg.sched.fixed_batch_size = parse_int(key, value);
  } else if (key == "policy.max_concurrent") {
    cfg.sched.max_concurrent = parse_int(key, value);
  } else if (key == "policy.workers") {
    cfg.sched.worker_count = parse_int(key, value);
  } else if (key == "workload.kind") {
    if (value == "poisson") {
      cfg.workload_from_trace = false;
    } else if (value == "trace") {
      cfg.workload_from_trace = true;
    } else {
      throw Error("workload.kind must be poisson or trace, got '" + value + "'");
    }
  } else if (key == "workload.rate") {
    cfg.workload.rate = parse_double(key, value);
  } else if (key == "workload.duration") {
    cfg.workload.duration_s = parse_double(key, value);
  } else if (key == "workload.seed") {
    cfg.workload.seed = parse_seed(key, value);
  } else if (key == "workload.preset") {
    if (value == "codefuse-like") {
      cfg.workload.input_len_dist = codefuse_like_input_dist();
      cfg.workload.gen_len_dist = codefuse_like_gen_dist();
    } else if (value == "long-gen") {
      cfg.workload.input_len_dist = codefuse_like_input_dist();
      cfg.workload.gen_len_dist = long_gen_dist();
    } else {
      throw Error("workload.preset must be codefuse-like or long-gen, got '" +
                  value + "'");
    }
  } else if (key == "workload.input_dist") {
    cfg.workload.input_len_dist = parse_dist(key, value);
  } else if (key == "workload.gen_dist") {
    cfg.workload.gen_len_dist = parse_dist(key, value);
  } else if (key == "workload.max_input_limit") {
    cfg.workload.max_input_limit = parse_int(key, value);
  } else if (key == "workload.max_gen_limit") {
    cfg.workload.max_gen_limit = parse_int(key, value);
  } else if (key == "workload.trace") {
    cfg.trace_path = value;
  } else if (key == "models.latency") {
    cfg.latency_model_path = value;
  } else if (key == "models.memory") {
    cfg.memory_model_path = value;
  } else if (key == "output.report") {
    cfg.report_path = value;
  } else if (key == "output.event_log") {
    cfg.event_log_path = value;
  } else if (key == "sim.horizon") {
    cfg.horizon_s = parse_double(key, value);
  } else {
    throw Error("unknown config key '" + key + "'");
  }
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg = default_run_config();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty config key");
    try {
      apply_override(cfg, key, value);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config file: " + path);
  return parse_config(in);
}

LatencyModel builtin_latency_model() {
  LatencyModel m;
  m.p1 = 2e-6;
  m.p2 = 1e-3;
  m.p3 = 5e-5;
  m.p4 = 0.02;
  m.d1 = 1e-7;
  m.d2 = 2e-4;
  m.d3 = 3e-6;
  m.d4 = 0.02;
  m.rmse_prefill = 0.0;
  m.rmse_decode = 0.0;
  m.n_cap = 64;
  m.l_cap = 4096;
  return m;
}

MemoryModel builtin_memory_model() {
  return MemoryModel::rule_table({{1024, 12}, {512, 22}, {0, 28}});
}

MemoryModel builtin_analytic_memory_model() {
  return MemoryModel::analytic(/*m_cap=*/80e9, /*m_model=*/26e9,
                               /*m_engine=*/4e9, /*delta=*/786432.0,
                               /*zeta=*/0.9);
}

}  // namespace slicesim
