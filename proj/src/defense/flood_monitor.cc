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

#include "pbsa/defense/flood_monitor.h"

#include <algorithm>
#include <vector>

namespace pbsa {

Thresholds ComputeThresholds(const CapacityModel& cap) {
  if (cap.cc <= 0) throw ConfigError("controller capacity must be positive");
  if (cap.x <= 0) throw ConfigError("switch count X must be positive");
  if (cap.y <= 0) throw ConfigError("hosts per switch Y must be positive");
  Rational tsw(cap.cc, cap.x);
  return {tsw, tsw / Rational(cap.y)};
}

Rational WeightedCount(std::span<const int64_t> counts, const Rational& decay) {
  Rational total;
  for (int64_t c : counts) total = total * decay + Rational(c);
  return total;
}

FloodMonitor::FloodMonitor(MonitorConfig config) : config_(std::move(config)) {
  if (config_.window <= 0) throw ConfigError("window must be positive");
  Rescale(config_.instances, config_.history_windows, config_.decay);
}

void FloodMonitor::Rescale(int instances, int history_windows, Rational decay) {
  if (instances < 1) throw ConfigError("instances must be >= 1");
  if (history_windows < 1) throw ConfigError("history_windows must be >= 1");
  if (decay < Rational(0) || decay > Rational(1)) {
    throw ConfigError("decay must lie in [0, 1]");
  }
  config_.instances = instances;
  config_.history_windows = history_windows;
  config_.decay = decay;
  CapacityModel scaled = config_.capacity;
  scaled.cc *= instances;
  thresholds_ = ComputeThresholds(scaled);
}

// Sum of the history weights; a threshold per window becomes a threshold
// on the weighted count once multiplied by this.
Rational FloodMonitor::Scale() const {
  std::vector<int64_t> ones(static_cast<size_t>(config_.history_windows), 1);
  return WeightedCount(ones, config_.decay);
}

void FloodMonitor::Trim(Series& s, int64_t now) const {
  int64_t horizon = now - config_.window * config_.history_windows;
  while (!s.offered.empty() && s.offered.front() <= horizon) s.offered.pop_front();
  while (!s.admitted.empty() && s.admitted.front() <= now - config_.window) {
    s.admitted.pop_front();
  }
}

Rational FloodMonitor::Weighted(const std::deque<int64_t>& ticks,
                                int64_t now) const {
  // Window k (0 = newest) covers (now - (k+1)W, now - kW].
  std::vector<int64_t> counts(static_cast<size_t>(config_.history_windows), 0);
  for (int64_t t : ticks) {
    int64_t k = (now - t) / config_.window;
    if (k < config_.history_windows) {
      ++counts[counts.size() - 1 - static_cast<size_t>(k)];
    }
  }
  return WeightedCount(counts, config_.decay);
}

CheckResult FloodMonitor::RecordAndCheck(const std::string& host,
                                         const std::string& sw, int64_t tick) {
  Series& h = hosts_[host];
  Series& s = switches_[sw];
  Trim(h, tick);
  Trim(s, tick);
  h.offered.push_back(tick);
  s.offered.push_back(tick);

  CheckResult r;
  Rational scale = Scale();
  r.host_rate = Weighted(h.offered, tick);
  r.switch_rate = Weighted(s.offered, tick);
  r.host_threshold = thresholds_.thost * scale;
  r.switch_threshold = thresholds_.tsw * scale;
  r.host_over = r.host_rate > r.host_threshold;
  r.switch_over = r.switch_rate > r.switch_threshold;

  auto admit = [&] {
    h.admitted.push_back(tick);
    s.admitted.push_back(tick);
    return r;
  };
  if (blocked_.count(host)) {
    r.verdict = DefenseVerdict::kDropRule;
    return r;
  }
  if (!r.host_over || config_.response == ResponsePolicy::kNone) return admit();
  if (config_.response == ResponsePolicy::kDropRule) {
    blocked_.insert(host);
    r.verdict = DefenseVerdict::kDropRule;
    r.new_block = true;
    return r;
  }
  // Throttle: admit up to floor(Thost) per sliding window, drop the rest.
  if (static_cast<int64_t>(h.admitted.size()) < thresholds_.thost.Floor()) {
    return admit();
  }
  r.verdict = DefenseVerdict::kThrottle;
  return r;
}

}  // namespace pbsa
