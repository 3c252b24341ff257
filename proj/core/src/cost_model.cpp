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

#include "slicesim/cost_model.h"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "slicesim/errors.h"

#include "json.hpp"

namespace slicesim {

double prefill_time(const LatencyModel& m, int n, int l_in) {
  const double dn = n, dl = l_in;
  return m.p1 * dn * dl + m.p2 * dn + m.p3 * dl + m.p4;
}

double decode_step_time(const LatencyModel& m, int context_len, int n) {
  const double dn = n, dl = context_len;
  return m.d1 * dn * dl + m.d2 * dn + m.d3 * dl + m.d4;
}

double decode_time(const LatencyModel& m, int n, int l_in, int l_out) {
  if (l_out <= 0) return 0.0;
  // sum_{l=l_in+1}^{l_in+l_out} (d1*n*l + d2*n + d3*l + d4)
  //   = (d1*n + d3) * sum(l) + (d2*n + d4) * l_out
  const double k = l_out;
  const double sum_l = k * static_cast<double>(l_in) + k * (k + 1.0) / 2.0;
  return (m.d1 * n + m.d3) * sum_l + (m.d2 * n + m.d4) * k;
}

double batch_serve_time(const LatencyModel& m, int n, int l_in, int l_out) {
  return prefill_time(m, n, l_in) + decode_time(m, n, l_in, l_out);
}

namespace {

bool negative_on_corner(double c1, double c2, double c3, double c4, int n_cap,
                        int l_cap) {
  // c1*n*l + c2*n + c3*l + c4 is bilinear in (n, l); extrema over the box
  // [1, n_cap] x [1, l_cap] sit on the corners.
  for (int n : {1, n_cap}) {
    for (int l : {1, l_cap}) {
      const double v = c1 * double(n) * double(l) + c2 * n + c3 * l + c4;
      if (!(v >= 0.0)) return true;
    }
  }
  return false;
}

}  // namespace

void validate(const LatencyModel& m) {
  for (double c : {m.p1, m.p2, m.p3, m.p4, m.d1, m.d2, m.d3, m.d4}) {
    if (!std::isfinite(c)) {
      throw DegenerateModelError("latency model has a non-finite coefficient");
    }
  }
  if (m.n_cap < 1 || m.l_cap < 1) {
    throw DegenerateModelError("latency model operating range caps must be >= 1");
  }
  if (negative_on_corner(m.p1, m.p2, m.p3, m.p4, m.n_cap, m.l_cap)) {
    throw DegenerateModelError(
        "latency model predicts negative prefill time within operating range");
  }
  if (negative_on_corner(m.d1, m.d2, m.d3, m.d4, m.n_cap, m.l_cap)) {
    throw DegenerateModelError(
        "latency model predicts negative decode-step time within operating range");
  }
}

namespace {

struct PhaseFit {
  double c1, c2, c3, c4;
  double rmse;
};

PhaseFit fit_phase(const std::vector<ProfileSample>& samples, Phase phase,
                   const char* name) {
  std::vector<const ProfileSample*> rows;
  std::set<int> sizes, lengths;
  for (const auto& s : samples) {
    if (s.phase != phase) continue;
    rows.push_back(&s);
    sizes.insert(s.batch_size);
    lengths.insert(s.length);
  }
  if (rows.size() < 4 || sizes.size() < 2 || lengths.size() < 2) {
    throw InsufficientSamplesError(
        std::string(name) +
        " fit needs >= 4 samples spanning >= 2 batch sizes and >= 2 lengths, got " +
        std::to_string(rows.size()) + " samples / " +
        std::to_string(sizes.size()) + " sizes / " +
        std::to_string(lengths.size()) + " lengths");
  }

  const auto m = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd design(m, 4);
  Eigen::VectorXd target(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double n = rows[i]->batch_size;
    const double l = rows[i]->length;
    design(i, 0) = n * l;
    design(i, 1) = n;
    design(i, 2) = l;
    design(i, 3) = 1.0;
    target(i) = rows[i]->latency_s;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 4) {
    throw InsufficientSamplesError(std::string(name) +
                                   " samples give a rank-deficient design matrix");
  }
  Eigen::Vector4d coef = qr.solve(target);
  const double rss = (design * coef - target).squaredNorm();
  return {coef(0), coef(1), coef(2), coef(3),
          std::sqrt(rss / static_cast<double>(m))};
}

}  // namespace

LatencyModel fit(const std::vector<ProfileSample>& samples, int n_cap,
                 int l_cap) {
  const PhaseFit pf = fit_phase(samples, Phase::kPrefill, "prefill");
  const PhaseFit df = fit_phase(samples, Phase::kDecode, "decode");
  LatencyModel m;
  m.p1 = pf.c1;
  m.p2 = pf.c2;
  m.p3 = pf.c3;
  m.p4 = pf.c4;
  m.d1 = df.c1;
  m.d2 = df.c2;
  m.d3 = df.c3;
  m.d4 = df.c4;
  m.rmse_prefill = pf.rmse;
  m.rmse_decode = df.rmse;
  m.n_cap = n_cap;
  m.l_cap = l_cap;
  validate(m);
  return m;
}

std::string to_json(const LatencyModel& m) {
  nlohmann::json j{{"p1", m.p1},
                   {"p2", m.p2},
                   {"p3", m.p3},
                   {"p4", m.p4},
                   {"d1", m.d1},
                   {"d2", m.d2},
                   {"d3", m.d3},
                   {"d4", m.d4},
                   {"rmse_prefill", m.rmse_prefill},
                   {"rmse_decode", m.rmse_decode},
                   {"n_cap", m.n_cap},
                   {"l_cap", m.l_cap}};
  return j.dump(2);
}

LatencyModel latency_model_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("latency model JSON: ") + e.what());
  }
  LatencyModel m;
  try {
    m.p1 = j.at("p1").get<double>();
    m.p2 = j.at("p2").get<double>();
    m.p3 = j.at("p3").get<double>();
    m.p4 = j.at("p4").get<double>();
    m.d1 = j.at("d1").get<double>();
    m.d2 = j.at("d2").get<double>();
    m.d3 = j.at("d3").get<double>();
    m.d4 = j.at("d4").get<double>();
    m.rmse_prefill = j.value("rmse_prefill", 0.0);
    m.rmse_decode = j.value("rmse_decode", 0.0);
    m.n_cap = j.value("n_cap", 64);
    m.l_cap = j.value("l_cap", 4096);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("latency model JSON: ") + e.what());
  }
  validate(m);
  return m;
}

LatencyModel load_latency_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open latency model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return latency_model_from_json(buf.str());
}

void save_latency_model(const LatencyModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write latency model file: " + path);
  out << to_json(m) << "\n";
}

namespace {

// Splits a CSV row on commas; no quoting, fields are trimmed.
std::vector<std::string> split_csv_row(const std::string& row) {
  std::vector<std::string> fields;
  std::string cur;
  std::istringstream ss(row);
  while (std::getline(ss, cur, ',')) {
    const auto b = cur.find_first_not_of(" \t\r");
    const auto e = cur.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  return fields;
}

}  // namespace

std::vector<ProfileSample> parse_profile_csv(std::istream& in) {
  std::vector<ProfileSample> samples;
  std::string row;
  int line = 0;
  while (std::getline(in, row)) {
    ++line;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty()) continue;
    if (line == 1) {
      if (split_csv_row(row) !=
          std::vector<std::string>{"phase", "batch_size", "length", "latency_s"}) {
        throw ParseError(line,
                         "profile CSV header must be phase,batch_size,length,latency_s");
      }
      continue;
    }
    const auto fields = split_csv_row(row);
    if (fields.size() != 4) {
      throw ParseError(line, "profile CSV row needs 4 fields, got " +
                                 std::to_string(fields.size()));
    }
    ProfileSample s;
    if (fields[0] == "prefill") {
      s.phase = Phase::kPrefill;
    } else if (fields[0] == "decode") {
      s.phase = Phase::kDecode;
    } else {
      throw ParseError(line, "unknown phase '" + fields[0] + "'");
    }
    try {
      s.batch_size = std::stoi(fields[1]);
      s.length = std::stoi(fields[2]);
      s.latency_s = std::stod(fields[3]);
    } catch (const std::exception&) {
      throw ParseError(line, "non-numeric field in profile CSV row");
    }
    if (s.batch_size < 1 || s.length < 1 || !(s.latency_s > 0.0)) {
      throw ParseError(line,
                       "profile sample needs batch_size >= 1, length >= 1, latency > 0");
    }
    samples.push_back(s);
  }
  return samples;
}

std::vector<ProfileSample> load_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open profile CSV: " + path);
  return parse_profile_csv(in);
}

}  // namespace slicesim
