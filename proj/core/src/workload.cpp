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

#include "slicesim/workload.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <tuple>

#include "slicesim/errors.h"

namespace slicesim {

LengthDist LengthDist::uniform(int lo, int hi) {
  LengthDist d;
  d.kind = Kind::kUniform;
  d.lo = lo;
  d.hi = hi;
  return d;
}

LengthDist LengthDist::log_normal(double mu, double sigma, int cap) {
  LengthDist d;
  d.kind = Kind::kLogNormal;
  d.mu = mu;
  d.sigma = sigma;
  d.cap = cap;
  return d;
}

LengthDist LengthDist::histogram(std::vector<int> edges,
                                 std::vector<double> weights) {
  LengthDist d;
  d.kind = Kind::kHistogram;
  d.edges = std::move(edges);
  d.weights = std::move(weights);
  return d;
}

void validate(const LengthDist& dist) {
  switch (dist.kind) {
    case LengthDist::Kind::kUniform:
      if (dist.lo < 1 || dist.hi < dist.lo) {
        throw Error("uniform length distribution requires 1 <= lo <= hi");
      }
      break;
    case LengthDist::Kind::kLogNormal:
      if (!(dist.sigma > 0.0) || dist.cap < 1) {
        throw Error("log-normal length distribution requires sigma > 0 and cap >= 1");
      }
      break;
    case LengthDist::Kind::kHistogram: {
      if (dist.edges.size() < 2 || dist.weights.size() + 1 != dist.edges.size()) {
        throw Error("histogram needs k weights and k+1 edges, k >= 1");
      }
      for (std::size_t i = 0; i + 1 < dist.edges.size(); ++i) {
        if (dist.edges[i] < 1 || dist.edges[i] > dist.edges[i + 1]) {
          throw Error("histogram edges must be >= 1 and non-decreasing");
        }
      }
      double total = 0.0;
      for (double w : dist.weights) {
        if (w < 0.0) throw Error("histogram weights must be non-negative");
        total += w;
      }
      if (std::abs(total - 1.0) > 1e-9) {
        throw Error("histogram weights must sum to 1 within 1e-9");
      }
      break;
    }
  }
}

void validate(const WorkloadSpec& spec) {
  if (!(spec.rate > 0.0)) throw Error("workload rate must be > 0");
  if (spec.duration_s < 0.0) throw Error("workload duration must be >= 0");
  if (spec.max_input_limit < 1 || spec.max_gen_limit < 1) {
    throw Error("length limits must be >= 1");
  }
  validate(spec.input_len_dist);
  validate(spec.gen_len_dist);
}

double next_uniform(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

namespace {

double next_exponential(double rate, std::mt19937_64& engine) {
  // Inverse CDF on 1-u, which lies in (0, 1], so the log argument is
  // never zero.
  return -std::log(1.0 - next_uniform(engine)) / rate;
}

double next_standard_normal(std::mt19937_64& engine) {
  // Box-Muller, always consuming exactly two uniforms per draw.
  const double u1 = 1.0 - next_uniform(engine);
  const double u2 = next_uniform(engine);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

int uniform_int(int lo, int hi, std::mt19937_64& engine) {
  const double u = next_uniform(engine);
  return lo + static_cast<int>(u * (static_cast<double>(hi) - lo + 1.0));
}

int clamp_length(long long value, int limit) {
  if (value < 1) return 1;
  if (value > limit) return limit;
  return static_cast<int>(value);
}

}  // namespace

int sample_length(const LengthDist& dist, int limit, std::mt19937_64& engine) {
  switch (dist.kind) {
    case LengthDist::Kind::kUniform:
      return clamp_length(uniform_int(dist.lo, dist.hi, engine), limit);
    case LengthDist::Kind::kLogNormal: {
      const double z = next_standard_normal(engine);
      const double raw = std::exp(dist.mu + dist.sigma * z);
      const long long rounded = raw > 1e18 ? static_cast<long long>(1e18)
                                           : std::llround(raw);
      return clamp_length(std::min<long long>(rounded, dist.cap), limit);
    }
    case LengthDist::Kind::kHistogram: {
      const double u = next_uniform(engine);
      double cdf = 0.0;
      std::size_t bucket = dist.weights.size() - 1;
      for (std::size_t i = 0; i < dist.weights.size(); ++i) {
        cdf += dist.weights[i];
        if (u < cdf) {
          bucket = i;
          break;
        }
      }
      const int lo = dist.edges[bucket];
      const int hi = dist.edges[bucket + 1];
      return clamp_length(uniform_int(lo, hi, engine), limit);
    }
  }
  throw Error("unreachable length distribution kind");
}

std::vector<Request> generate(const WorkloadSpec& spec) {
  validate(spec);
  std::mt19937_64 engine(spec.seed);
  std::vector<Request> requests;
  double clock = 0.0;
  while (true) {
    clock += next_exponential(spec.rate, engine);
    if (clock > spec.duration_s) break;
    Request r;
    r.id = static_cast<RequestId>(requests.size());
    r.arrival_time = clock;
    r.orig_input_len =
        sample_length(spec.input_len_dist, spec.max_input_limit, engine);
    r.true_gen_len =
        sample_length(spec.gen_len_dist, spec.max_gen_limit, engine);
    requests.push_back(r);
  }
  return requests;
}

std::vector<Request> parse_trace_csv(std::istream& in, int max_input_limit,
                                     int max_gen_limit) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) return {};
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "arrival_s,input_len,gen_len") {
    throw ParseError(line_no,
                     "expected trace header 'arrival_s,input_len,gen_len'");
  }

  std::vector<Request> requests;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string arrival_field, input_field, gen_field, extra;
    if (!std::getline(row, arrival_field, ',') ||
        !std::getline(row, input_field, ',') ||
        !std::getline(row, gen_field, ',')) {
      throw ParseError(line_no, "expected 3 comma-separated fields");
    }
    if (std::getline(row, extra, ',')) {
      throw ParseError(line_no, "expected 3 comma-separated fields");
    }
    Request r;
    try {
      std::size_t pos = 0;
      r.arrival_time = std::stod(arrival_field, &pos);
      if (pos != arrival_field.size()) throw std::invalid_argument("trailing");
      r.orig_input_len = std::stoi(input_field, &pos);
      if (pos != input_field.size()) throw std::invalid_argument("trailing");
      r.true_gen_len = std::stoi(gen_field, &pos);
      if (pos != gen_field.size()) throw std::invalid_argument("trailing");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError(line_no, "malformed numeric field");
    }
    if (!(r.arrival_time >= 0.0) || !std::isfinite(r.arrival_time)) {
      throw ParseError(line_no, "arrival_s must be finite and >= 0");
    }
    if (r.orig_input_len < 1 || r.true_gen_len < 1) {
      throw ParseError(line_no, "lengths must be >= 1");
    }
    if (r.orig_input_len > max_input_limit) {
      throw LimitViolationError(
          line_no, "input_len " + std::to_string(r.orig_input_len) +
                       " exceeds limit " + std::to_string(max_input_limit));
    }
    if (r.true_gen_len > max_gen_limit) {
      throw LimitViolationError(
          line_no, "gen_len " + std::to_string(r.true_gen_len) +
                       " exceeds limit " + std::to_string(max_gen_limit));
    }
    requests.push_back(r);
  }
  std::stable_sort(requests.begin(), requests.end(),
                   [](const Request& a, const Request& b) {
                     return a.arrival_time < b.arrival_time;
                   });
  for (std::size_t i = 0; i < requests.size(); ++i) {
    requests[i].id = static_cast<RequestId>(i);
  }
  return requests;
}

std::vector<Request> load_trace(const std::string& path, int max_input_limit,
                                int max_gen_limit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open trace file: " + path);
  return parse_trace_csv(in, max_input_limit, max_gen_limit);
}

void write_trace_csv(const std::vector<Request>& requests, std::ostream& out) {
  out << "arrival_s,input_len,gen_len\n";
  for (const Request& r : requests) {
    std::ostringstream arrival;
    arrival.precision(17);
    arrival << r.arrival_time;
    out << arrival.str() << ',' << r.orig_input_len << ',' << r.true_gen_len
        << '\n';
  }
}

void save_trace(const std::vector<Request>& requests, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open trace path for writing: " + path);
  write_trace_csv(requests, out);
}

LengthDist codefuse_like_input_dist() {
  return LengthDist::histogram({1, 128, 256, 512, 1024},
                               {0.30, 0.25, 0.25, 0.20});
}

LengthDist codefuse_like_gen_dist() {
  // 85% of the mass lies at or below 511 tokens; the tail reaches the
  // 1024-token generation limit.
  return LengthDist::histogram({1, 64, 128, 256, 511, 1024},
                               {0.10, 0.15, 0.30, 0.30, 0.15});
}

LengthDist long_gen_dist() {
  // 60% of generation lengths exceed 512 tokens.
  return LengthDist::histogram({1, 512, 513, 1024}, {0.40, 0.0, 0.60});
}

}  // namespace slicesim
