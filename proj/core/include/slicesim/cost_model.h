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

#ifndef SLICESIM_COST_MODEL_H_
#define SLICESIM_COST_MODEL_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace slicesim {

// Fitted latency coefficients for one engine. Prefill latency is bilinear in
// (batch size, batch input length); per-iteration decode latency is bilinear
// in (batch size, context length). Immutable after construction and safe to
// share across threads.
struct LatencyModel {
  // prefill: p1*n*l + p2*n + p3*l + p4
  double p1 = 0.0, p2 = 0.0, p3 = 0.0, p4 = 0.0;
  // per-iteration decode: d1*n*l + d2*n + d3*l + d4
  double d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0;
  double rmse_prefill = 0.0;
  double rmse_decode = 0.0;
  // Operating range over which non-negativity is validated.
  int n_cap = 64;
  int l_cap = 4096;
};

enum class Phase { kPrefill, kDecode };

// One profiled latency measurement. For prefill, `length` is the batch input
// length; for decode, the context length at that iteration.
struct ProfileSample {
  Phase phase = Phase::kPrefill;
  int batch_size = 1;
  int length = 1;
  double latency_s = 0.0;
};

// Latency of the prefill iteration for a batch of `n` requests padded to
// input length `l_in`.
double prefill_time(const LatencyModel& m, int n, int l_in);

// Latency of one decode iteration at context length `context_len` with `n`
// requests in the batch.
double decode_step_time(const LatencyModel& m, int context_len, int n);

// Total decode latency for `l_out` iterations following a prefill of length
// `l_in`. The summand is linear in the context length, so this evaluates the
// arithmetic-series closed form rather than looping.
double decode_time(const LatencyModel& m, int n, int l_in, int l_out);

// Prefill plus decode: the full static-batch serving time.
double batch_serve_time(const LatencyModel& m, int n, int l_in, int l_out);

// Throws DegenerateModelError if any coefficient is non-finite or the model
// predicts a negative prefill or decode-step time anywhere on
// [1, n_cap] x [1, l_cap]. Both surfaces are bilinear, so checking the four
// corners is exact.
void validate(const LatencyModel& m);

// Least-squares fit of the prefill and decode surfaces. Requires at least
// four samples per phase spanning at least two distinct batch sizes and two
// distinct lengths; throws InsufficientSamplesError otherwise (or when the
// design matrix is still rank deficient). The fitted model is validated over
// [1, n_cap] x [1, l_cap]; a model predicting negative latency there throws
// DegenerateModelError.
LatencyModel fit(const std::vector<ProfileSample>& samples, int n_cap = 64,
                 int l_cap = 4096);

// JSON object with keys p1..p4, d1..d4, rmse_prefill, rmse_decode, n_cap,
// l_cap. Loading validates the model.
std::string to_json(const LatencyModel& m);
LatencyModel latency_model_from_json(const std::string& json_text);
LatencyModel load_latency_model(const std::string& path);
void save_latency_model(const LatencyModel& m, const std::string& path);

// Profile sample CSV: header `phase,batch_size,length,latency_s`, phase in
// {prefill, decode}. Throws ParseError with the offending 1-based line.
std::vector<ProfileSample> parse_profile_csv(std::istream& in);
std::vector<ProfileSample> load_profile_csv(const std::string& path);

}  // namespace slicesim

#endif  // SLICESIM_COST_MODEL_H_
