// Copyright 2026 The PbSA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gmpxx.h>
#include <gtest/gtest.h>

#include <random>

#include "pbsa/defense/flood_monitor.h"

namespace pbsa {
namespace {

mpq_class Q(const Rational& r) {
  mpq_class q(mpz_class(std::to_string(r.num())), mpz_class(std::to_string(r.den())));
  q.canonicalize();
  return q;
}

TEST(ThresholdTest, WorkedExample) {
  Thresholds t = ComputeThresholds({1000, 10, 10, 0});
  EXPECT_EQ(t.tsw, Rational(100));
  EXPECT_EQ(t.thost, Rational(10));
}

TEST(ThresholdTest, DegenerateIdentity) {
  Thresholds t = ComputeThresholds({777, 1, 1, 0});
  EXPECT_EQ(t.tsw, Rational(777));
  EXPECT_EQ(t.thost, Rational(777));
}

TEST(ThresholdTest, ZeroDivisorIsConfigError) {
  EXPECT_THROW(ComputeThresholds({1000, 0, 10, 0}), ConfigError);
  EXPECT_THROW(ComputeThresholds({1000, 10, 0, 0}), ConfigError);
  EXPECT_THROW(ComputeThresholds({0, 10, 10, 0}), ConfigError);
}

TEST(ThresholdProperty, MatchesGmpRationalOracle) {
  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<int64_t> cc(1, 10000000), xy(1, 5000);
  for (int i = 0; i < 1000; ++i) {
    CapacityModel cap{cc(rng), xy(rng), xy(rng), 0};
    Thresholds t = ComputeThresholds(cap);
    mpq_class tsw(cap.cc, cap.x);
    tsw.canonicalize();
    mpq_class thost = tsw / cap.y;
    ASSERT_EQ(Q(t.tsw), tsw) << cap.cc << "/" << cap.x;
    ASSERT_EQ(Q(t.thost), thost);
    ASSERT_EQ(t.thost * Rational(cap.y), t.tsw);
    ASSERT_EQ(t.tsw * Rational(cap.x), Rational(cap.cc));
  }
}

TEST(RationalTest, ArithmeticAndOrdering) {
  EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
  EXPECT_EQ(Rational(-3, 2).Floor(), -2);
  EXPECT_EQ(Rational(7, 2).Floor(), 3);
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(5, 2).ToString(), "5/2");
  EXPECT_THROW(Rational(1, 0), std::domain_error);
}

MonitorConfig Config(ResponsePolicy policy) {
  MonitorConfig c;
  c.capacity = {1000, 10, 10, 0};  // Thost = 10, TSw = 100
  c.window = 1000;
  c.response = policy;
  return c;
}

TEST(FloodMonitorTest, AtThresholdIsOk) {
  FloodMonitor m(Config(ResponsePolicy::kThrottle));
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(m.RecordAndCheck("h1", "s1", i).verdict, DefenseVerdict::kOk);
  }
}

// Step function: first ten pass, the eleventh fires, for every policy.
TEST(FloodMonitorTest, FiresExactlyOnRequestAfterThreshold) {
  for (ResponsePolicy p : {ResponsePolicy::kThrottle, ResponsePolicy::kDropRule}) {
    FloodMonitor m(Config(p));
    for (int i = 1; i <= 30; ++i) {
      CheckResult r = m.RecordAndCheck("h1", "s1", i);
      EXPECT_EQ(r.host_over, i > 10) << i;
      EXPECT_EQ(r.verdict != DefenseVerdict::kOk, i > 10) << i;
      EXPECT_EQ(r.new_block, p == ResponsePolicy::kDropRule && i == 11) << i;
    }
  }
}

TEST(FloodMonitorTest, ThrottleCapsEverySlidingWindow) {
  FloodMonitor m(Config(ResponsePolicy::kThrottle));
  std::vector<int64_t> admitted;
  for (int64_t t = 0; t < 10000; t += 20) {  // 50 per window offered
    if (m.RecordAndCheck("h1", "s1", t).verdict == DefenseVerdict::kOk) {
      admitted.push_back(t);
    }
  }
  for (size_t i = 0; i < admitted.size(); ++i) {
    size_t in_window = 0;
    for (size_t j = i; j < admitted.size() && admitted[j] < admitted[i] + 1000; ++j) {
      ++in_window;
    }
    EXPECT_LE(in_window, 10u);
  }
  EXPECT_EQ(admitted.size(), 100u);  // 10 windows x 10
}

TEST(FloodMonitorTest, NeighbourIsNotPenalised) {
  FloodMonitor m(Config(ResponsePolicy::kDropRule));
  int legit_ok = 0;
  for (int64_t t = 0; t < 5000; ++t) {
    m.RecordAndCheck("attacker", "s1", t);
    if (t % 200 == 0) {
      legit_ok += m.RecordAndCheck("legit", "s1", t).verdict == DefenseVerdict::kOk;
    }
  }
  EXPECT_EQ(legit_ok, 25);
  EXPECT_TRUE(m.Blocked("attacker"));
  EXPECT_FALSE(m.Blocked("legit"));
}

TEST(FloodMonitorTest, NonePolicyOnlyReports) {
  FloodMonitor m(Config(ResponsePolicy::kNone));
  for (int i = 0; i < 50; ++i) {
    CheckResult r = m.RecordAndCheck("h1", "s1", i);
    EXPECT_EQ(r.verdict, DefenseVerdict::kOk);
    EXPECT_EQ(r.host_over, i >= 10);
  }
}

TEST(RescaleTest, InstancesScaleLinearly) {
  FloodMonitor m(Config(ResponsePolicy::kThrottle));
  Rational before = m.thresholds().tsw;
  m.Rescale(2, 1, Rational(1, 2));
  EXPECT_EQ(m.thresholds().tsw, before * Rational(2));
  EXPECT_THROW(m.Rescale(0, 1, Rational(1, 2)), ConfigError);
}

TEST(RescaleTest, GeometricHistoryWeighting) {
  std::vector<int64_t> counts = {8, 8};
  EXPECT_EQ(WeightedCount(counts, Rational(1, 2)), Rational(12));
  EXPECT_EQ(WeightedCount(counts, Rational(1)), Rational(16));
}

TEST(RescaleTest, SteadyTrafficAtThresholdNeverFlagged) {
  for (Rational decay : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(1)}) {
    for (int history : {1, 2, 4}) {
      FloodMonitor m(Config(ResponsePolicy::kDropRule));
      m.Rescale(1, history, decay);
      for (int64_t t = 0; t < 20000; t += 100) {  // exactly 10 per window
        ASSERT_EQ(m.RecordAndCheck("h", "s", t).verdict, DefenseVerdict::kOk)
            << decay.ToString() << " h=" << history << " t=" << t;
      }
    }
  }
}

TEST(RescaleTest, HistoryRemembersEarlierBurst) {
  FloodMonitor plain(Config(ResponsePolicy::kNone));
  FloodMonitor weighted(Config(ResponsePolicy::kNone));
  weighted.Rescale(1, 2, Rational(1, 2));
  // 20 in the older window and 8 in the newer: 8 + 20/2 = 18 > 10 * 1.5.
  for (int i = 0; i < 20; ++i) {
    plain.RecordAndCheck("h", "s", i);
    weighted.RecordAndCheck("h", "s", i);
  }
  CheckResult p, w;
  for (int i = 0; i < 8; ++i) {
    p = plain.RecordAndCheck("h", "s", 1500 + i);
    w = weighted.RecordAndCheck("h", "s", 1500 + i);
  }
  EXPECT_FALSE(p.host_over);
  EXPECT_TRUE(w.host_over);
  EXPECT_EQ(w.host_rate, Rational(18));
}

}  // namespace
}  // namespace pbsa
