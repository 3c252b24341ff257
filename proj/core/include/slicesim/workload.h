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

#ifndef SLICESIM_WORKLOAD_H_
#define SLICESIM_WORKLOAD_H_

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "slicesim/request.h"

namespace slicesim {

// Token-length distribution. Uniform and histogram draws are integers in
// inclusive ranges; log-normal draws are rounded and capped. All draws are
// additionally truncated to [1, limit] at generation time.
struct LengthDist {
  enum class Kind { kUniform, kLogNormal, kHistogram };
  Kind kind = Kind::kUniform;

  int lo = 1;  // uniform
  int hi = 1;

  double mu = 0.0;  // log-normal, parameters of log(length)
  double sigma = 1.0;
  int cap = 1024;

  std::vector<int> edges;       // histogram: k+1 edges for k buckets
  std::vector<double> weights;  // histogram: k weights summing to 1

  static LengthDist uniform(int lo, int hi);
  static LengthDist log_normal(double mu, double sigma, int cap);
  static LengthDist histogram(std::vector<int> edges,
                              std::vector<double> weights);
};

void validate(const LengthDist& dist);

struct WorkloadSpec {
  double rate = 20.0;        // Poisson arrivals per second
  double duration_s = 600.0; // arrivals stop after this instant
  LengthDist input_len_dist = LengthDist::uniform(1, 1024);
  LengthDist gen_len_dist = LengthDist::uniform(1, 1024);
  int max_input_limit = 1024;
  int max_gen_limit = 1024;
  std::uint64_t seed = 42;
};

void validate(const WorkloadSpec& spec);

// Deterministic uniform draw in [0, 1) from the top 53 bits of the engine.
// All samplers below consume the engine only through this function, so a
// fixed seed reproduces streams bit-for-bit across platforms.
double next_uniform(std::mt19937_64& engine);

// One draw from `dist`, truncated to [1, limit].
int sample_length(const LengthDist& dist, int limit, std::mt19937_64& engine);

// Poisson request stream: exponential inter-arrival gaps at spec.rate until
// the clock passes spec.duration_s; per request, the input length and then
// the generation length are drawn from the spec distributions. Ids are
// assigned 0..n-1 in arrival order.
std::vector<Request> generate(const WorkloadSpec& spec);

// Trace ingestion. Header `arrival_s,input_len,gen_len`, one request per
// row. Rows are sorted by arrival time; ids follow sorted order. Throws
// ParseError on malformed rows and LimitViolationError when a length
// exceeds its limit (1-based line numbers, header is line 1).
std::vector<Request> parse_trace_csv(std::istream& in, int max_input_limit,
                                     int max_gen_limit);
std::vector<Request> load_trace(const std::string& path,
                                int max_input_limit = 1024,
                                int max_gen_limit = 1024);
void save_trace(const std::vector<Request>& requests, const std::string& path);
void write_trace_csv(const std::vector<Request>& requests, std::ostream& out);

// Synthetic presets shaped after production code-assistant traffic: most
// generation lengths fall below 512 tokens. The long-generation variant
// shifts 60% of the generation mass above 512.
LengthDist codefuse_like_input_dist();
LengthDist codefuse_like_gen_dist();
LengthDist long_gen_dist();

}  // namespace slicesim

#endif  // SLICESIM_WORKLOAD_H_
