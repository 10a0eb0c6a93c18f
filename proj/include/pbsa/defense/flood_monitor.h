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

#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>

#include "pbsa/defense/rational.h"

namespace pbsa {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// cc: controller capacity in requests per window; x: switches per
// controller; y: hosts per switch; cs: switch capacity (informational).
struct CapacityModel {
  int64_t cc = 0;
  int64_t x = 1;
  int64_t y = 1;
  int64_t cs = 0;
};

struct Thresholds {
  Rational tsw;
  Rational thost;
  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

// tsw = cc / x, thost = tsw / y. Throws ConfigError unless cc, x, y > 0.
Thresholds ComputeThresholds(const CapacityModel& cap);

enum class ResponsePolicy { kNone, kThrottle, kDropRule };
enum class DefenseVerdict { kOk, kThrottle, kDropRule };

struct MonitorConfig {
  CapacityModel capacity;
  int64_t window = 1000000;  // ticks
  ResponsePolicy response = ResponsePolicy::kThrottle;
  int instances = 1;
  int history_windows = 1;  // current window plus this many - 1 older ones
  Rational decay{1, 2};
};

struct CheckResult {
  DefenseVerdict verdict = DefenseVerdict::kOk;
  bool new_block = false;      // first DROP_RULE for this offender
  bool host_over = false;
  bool switch_over = false;
  Rational host_rate;          // weighted count including this request
  Rational switch_rate;
  Rational host_threshold;     // effective, history weights applied
  Rational switch_threshold;
};

// sum(counts[k] * decay^(n-1-k)); counts are oldest first, so the newest
// window has weight 1.
Rational WeightedCount(std::span<const int64_t> counts, const Rational& decay);

class FloodMonitor {
 public:
  explicit FloodMonitor(MonitorConfig config);

  // Counts one packet_in from `host` behind `sw` at `tick` (ticks must not
  // decrease) and decides. Hosts at or under their threshold always get
  // kOk; the switch threshold is reported but enforcement is per host.
  CheckResult RecordAndCheck(const std::string& host, const std::string& sw,
                             int64_t tick);

  // Effective capacity becomes cc * instances; history weighting uses
  // `history_windows` windows decayed by `decay` per step.
  void Rescale(int instances, int history_windows, Rational decay);

  const Thresholds& thresholds() const { return thresholds_; }
  const MonitorConfig& config() const { return config_; }
  bool Blocked(const std::string& host) const { return blocked_.count(host); }

 private:
  struct Series {
    std::deque<int64_t> offered;
    std::deque<int64_t> admitted;
  };
  Rational Weighted(const std::deque<int64_t>& ticks, int64_t now) const;
  Rational Scale() const;
  void Trim(Series& s, int64_t now) const;

  MonitorConfig config_;
  Thresholds thresholds_;
  std::map<std::string, Series> hosts_;
  std::map<std::string, Series> switches_;
  std::set<std::string> blocked_;
};

}  // namespace pbsa
