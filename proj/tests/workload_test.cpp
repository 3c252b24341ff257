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

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "slicesim/errors.h"

namespace slicesim {
namespace {

WorkloadSpec small_spec() {
  WorkloadSpec spec;
  spec.rate = 20.0;
  spec.duration_s = 30.0;
  spec.seed = 42;
  return spec;
}

TEST(Generate, SameSeedReproducesTheStreamExactly) {
  const std::vector<Request> a = generate(small_spec());
  const std::vector<Request> b = generate(small_spec());
  ASSERT_EQ(a.size(), b.size());
  ASSERT_FALSE(a.empty());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].arrival_time, b[i].arrival_time);  // bitwise, not near
    EXPECT_EQ(a[i].orig_input_len, b[i].orig_input_len);
    EXPECT_EQ(a[i].true_gen_len, b[i].true_gen_len);
  }
  WorkloadSpec other = small_spec();
  other.seed = 43;
  const std::vector<Request> c = generate(other);
  bool differs = c.size() != a.size();
  for (std::size_t i = 0; !differs && i < a.size(); ++i) {
    differs = a[i].arrival_time != c[i].arrival_time;
  }
  EXPECT_TRUE(differs);
}

TEST(Generate, IdsAndArrivalsAreOrdered) {
  const std::vector<Request> requests = generate(small_spec());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    EXPECT_EQ(requests[i].id, static_cast<RequestId>(i));
    if (i > 0) EXPECT_GE(requests[i].arrival_time,
                         requests[i - 1].arrival_time);
    EXPECT_LE(requests[i].arrival_time, small_spec().duration_s);
  }
}

TEST(Generate, MeanGapApproachesOneOverRate) {
  WorkloadSpec spec = small_spec();
  spec.duration_s = 600.0;
  const std::vector<Request> requests = generate(spec);
  ASSERT_GT(requests.size(), 10000u);
  const double span = requests.back().arrival_time;
  const double mean_gap = span / (requests.size() - 1);
  EXPECT_GT(mean_gap, 0.045);
  EXPECT_LT(mean_gap, 0.055);
}

TEST(Generate, GapsAreExponentialByChiSquare) {
  WorkloadSpec spec = small_spec();
  spec.rate = 10.0;
  spec.duration_s = 1000.0;
  const std::vector<Request> requests = generate(spec);
  std::vector<double> gaps;
  for (std::size_t i = 1; i < requests.size(); ++i) {
    gaps.push_back(requests[i].arrival_time - requests[i - 1].arrival_time);
  }
  ASSERT_GT(gaps.size(), 5000u);
  // 20 equal-probability bins under Exp(rate): edges at -ln(1 - k/20)/rate.
  const int kBins = 20;
  std::vector<int> counts(kBins, 0);
  for (double g : gaps) {
    const double u = 1.0 - std::exp(-spec.rate * g);
    int bin = static_cast<int>(u * kBins);
    if (bin >= kBins) bin = kBins - 1;
    ++counts[bin];
  }
  const double expected = static_cast<double>(gaps.size()) / kBins;
  double stat = 0.0;
  for (int c : counts) {
    stat += (c - expected) * (c - expected) / expected;
  }
  // chi-square 99.9th percentile with 19 degrees of freedom.
  EXPECT_LT(stat, 43.82);
}

TEST(SampleLength, TruncatesToOneAndLimit) {
  std::mt19937_64 engine(1);
  const LengthDist wide = LengthDist::uniform(1, 5000);
  for (int i = 0; i < 2000; ++i) {
    const int v = sample_length(wide, 1024, engine);
    ASSERT_GE(v, 1);
    ASSERT_LE(v, 1024);
  }
  const LengthDist log_heavy = LengthDist::log_normal(8.0, 2.0, 100000);
  for (int i = 0; i < 2000; ++i) {
    const int v = sample_length(log_heavy, 512, engine);
    ASSERT_GE(v, 1);
    ASSERT_LE(v, 512);
  }
}

TEST(SampleLength, DegenerateHistogramBucketIsConstant) {
  const LengthDist point = LengthDist::histogram({100, 100}, {1.0});
  std::mt19937_64 engine(9);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(sample_length(point, 1024, engine), 100);
  }
}

TEST(SampleLength, HistogramRespectsBucketWeights) {
  // Two buckets, [1,10] at 30% and [11,100] at 70%.
  const LengthDist two = LengthDist::histogram({1, 10, 100}, {0.3, 0.7});
  std::mt19937_64 engine(4);
  int low = 0;
  const int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i) {
    const int v = sample_length(two, 1024, engine);
    ASSERT_GE(v, 1);
    ASSERT_LE(v, 100);
    if (v <= 10) ++low;
  }
  const double frac = static_cast<double>(low) / kDraws;
  EXPECT_NEAR(frac, 0.3, 0.02);
}

TEST(Presets, MostGenerationLengthsStayBelow512) {
  const LengthDist dist = codefuse_like_gen_dist();
  std::mt19937_64 engine(11);
  int below = 0;
  const int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i) {
    if (sample_length(dist, 1024, engine) <= 512) ++below;
  }
  EXPECT_GT(static_cast<double>(below) / kDraws, 0.80);
}

TEST(Presets, LongGenVariantShiftsMassAbove512) {
  const LengthDist dist = long_gen_dist();
  std::mt19937_64 engine(11);
  int above = 0;
  const int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i) {
    if (sample_length(dist, 1024, engine) > 512) ++above;
  }
  EXPECT_NEAR(static_cast<double>(above) / kDraws, 0.60, 0.02);
}

TEST(LengthDistValidate, RejectsMalformedShapes) {
  EXPECT_THROW(validate(LengthDist::uniform(5, 4)), Error);
  EXPECT_THROW(validate(LengthDist::uniform(0, 4)), Error);
  EXPECT_THROW(validate(LengthDist::log_normal(0.0, -1.0, 1024)), Error);
  EXPECT_THROW(validate(LengthDist::histogram({1, 10}, {0.5, 0.5})), Error);
  EXPECT_THROW(validate(LengthDist::histogram({10, 1}, {1.0})), Error);
  EXPECT_THROW(validate(LengthDist::histogram({1, 10}, {0.5})), Error);
  EXPECT_THROW(validate(LengthDist::histogram({0, 10}, {1.0})), Error);
  EXPECT_NO_THROW(validate(LengthDist::histogram({1, 10, 20}, {0.25, 0.75})));
}

TEST(WorkloadSpecValidate, RejectsNonPositiveRateOrDuration) {
  WorkloadSpec spec = small_spec();
  spec.rate = 0.0;
  EXPECT_THROW(validate(spec), Error);
  spec = small_spec();
  spec.duration_s = -1.0;
  EXPECT_THROW(validate(spec), Error);
  spec = small_spec();
  spec.max_gen_limit = 0;
  EXPECT_THROW(validate(spec), Error);
  EXPECT_NO_THROW(validate(small_spec()));
}

TEST(TraceCsv, ParsesRowsAndAssignsIdsInArrivalOrder) {
  std::istringstream in(
      "arrival_s,input_len,gen_len\n"
      "3.5,20,30\n"
      "0.0,10,100\n"
      "3.5,15,25\n");
  const std::vector<Request> requests = parse_trace_csv(in, 1024, 1024);
  ASSERT_EQ(requests.size(), 3u);
  EXPECT_EQ(requests[0].id, 0);
  EXPECT_DOUBLE_EQ(requests[0].arrival_time, 0.0);
  EXPECT_EQ(requests[0].orig_input_len, 10);
  EXPECT_EQ(requests[0].true_gen_len, 100);
  // Equal arrivals keep file order after the stable sort.
  EXPECT_EQ(requests[1].orig_input_len, 20);
  EXPECT_EQ(requests[2].orig_input_len, 15);
  EXPECT_EQ(requests[2].id, 2);
}

TEST(TraceCsv, ReportsLimitViolationsWithTheLine) {
  std::istringstream in(
      "arrival_s,input_len,gen_len\n"
      "0.0,10,100\n"
      "1.0,10,2000\n");
  try {
    parse_trace_csv(in, 1024, 1024);
    FAIL() << "expected LimitViolationError";
  } catch (const LimitViolationError& e) {
    EXPECT_EQ(e.line, 3);
  }
}

TEST(TraceCsv, ReportsParseErrorsWithTheLine) {
  {
    std::istringstream in("arrival,input,gen\n0.0,1,1\n");
    try {
      parse_trace_csv(in, 1024, 1024);
      FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line, 1);
    }
  }
  {
    std::istringstream in("arrival_s,input_len,gen_len\n0.0,1\n");
    try {
      parse_trace_csv(in, 1024, 1024);
      FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line, 2);
    }
  }
  {
    std::istringstream in("arrival_s,input_len,gen_len\n0.0,1,1\n-2.0,1,1\n");
    try {
      parse_trace_csv(in, 1024, 1024);
      FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line, 3);
    }
  }
  {
    std::istringstream in("arrival_s,input_len,gen_len\n0.0,zero,1\n");
    EXPECT_THROW(parse_trace_csv(in, 1024, 1024), ParseError);
  }
  {
    std::istringstream in("arrival_s,input_len,gen_len\n0.0,0,5\n");
    EXPECT_THROW(parse_trace_csv(in, 1024, 1024), ParseError);
  }
}

TEST(TraceCsv, HeaderOnlyOrEmptyStreamYieldsNoRequests) {
  std::istringstream header_only("arrival_s,input_len,gen_len\n");
  EXPECT_TRUE(parse_trace_csv(header_only, 1024, 1024).empty());
  std::istringstream empty("");
  EXPECT_TRUE(parse_trace_csv(empty, 1024, 1024).empty());
}

TEST(TraceCsv, WriteReadRoundTripsExactly) {
  WorkloadSpec spec = small_spec();
  spec.duration_s = 10.0;
  const std::vector<Request> original = generate(spec);
  ASSERT_FALSE(original.empty());

  std::ostringstream out;
  write_trace_csv(original, out);
  std::istringstream in(out.str());
  const std::vector<Request> back = parse_trace_csv(in, 1024, 1024);

  ASSERT_EQ(back.size(), original.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].arrival_time, original[i].arrival_time);
    EXPECT_EQ(back[i].orig_input_len, original[i].orig_input_len);
    EXPECT_EQ(back[i].true_gen_len, original[i].true_gen_len);
  }
}

TEST(TraceCsv, SaveLoadFileRoundTrip) {
  WorkloadSpec spec = small_spec();
  spec.duration_s = 5.0;
  const std::vector<Request> original = generate(spec);
  const std::string path = testing::TempDir() + "workload_test_trace.csv";
  save_trace(original, path);
  const std::vector<Request> back = load_trace(path);
  ASSERT_EQ(back.size(), original.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].arrival_time, original[i].arrival_time);
  }
}

}  // namespace
}  // namespace slicesim
