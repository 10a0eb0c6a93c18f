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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbsa/controller/controller.h"
#include "pbsa/dataplane/switch.h"
#include "pbsa/harness/scenario.h"

namespace pbsa {

// Switches and controllers built from a scenario. Ports on each switch are
// numbered: intra-domain links in declaration order, then hosts, then the
// external link of a gateway.
class World {
 public:
  explicit World(const Scenario& scenario);

  const Scenario& scenario() const { return scenario_; }
  Switch& switch_at(const std::string& id) { return switches_.at(id); }
  const Switch& switch_at(const std::string& id) const { return switches_.at(id); }
  bool HasSwitch(const std::string& id) const { return switches_.count(id) > 0; }
  const std::map<std::string, Switch>& switches() const { return switches_; }
  Controller& controller(const std::string& as_id) { return *controllers_.at(as_id); }
  const Controller& controller(const std::string& as_id) const {
    return *controllers_.at(as_id);
  }
  const std::string& DomainOfSwitch(const std::string& sw) const {
    return switch_domain_.at(sw);
  }
  const AsGraph& as_graph() const { return as_graph_; }

 private:
  Scenario scenario_;
  AsGraph as_graph_;
  std::map<std::string, Switch> switches_;
  std::map<std::string, std::string> switch_domain_;
  std::map<std::string, std::unique_ptr<Controller>> controllers_;
};

// Outcome of one flow attempt, judged by its first packet.
struct FlowRecord {
  std::string id;
  std::string group;
  std::string src_host;
  std::string flow_key;
  int64_t start = 0;
  int packets = 0;
  int delivered = 0;
  std::string outcome;      // DELIVERED or a drop reason
  std::string drop_domain;  // empty when delivered
  std::vector<std::string> switch_path;
  std::vector<std::string> as_path;         // domains actually traversed
  std::vector<std::string> handle_visited;  // as recorded at delivery
  std::optional<int64_t> install_tick;      // ALLOW at the first domain
  std::optional<int64_t> established_ticks; // first delivery - start
};

struct PacketInRecord {
  int64_t tick = 0;  // arrival at the controller
  std::string as_id;
  std::string switch_id;
  std::string flow_id;
  std::string matched_pe;
  bool allowed = false;
  std::string reason;
  std::string detail;
  std::string defense;
  size_t rules = 0;
  int64_t cost_ticks = 0;
  int64_t latency_ticks = 0;  // queueing plus processing
};

struct MetricsReport {
  std::string scenario;
  std::string mode;
  uint64_t seed = 0;
  bool pbsa = true;
  uint64_t offered_packets = 0;
  uint64_t delivered_packets = 0;
  std::map<std::string, uint64_t> drops;  // by reason
  uint64_t flow_mods = 0;
  std::map<std::string, int64_t> blocks;  // offender address -> decision tick
  int64_t end_tick = 0;
  std::vector<FlowRecord> flows;
  std::vector<PacketInRecord> packet_ins;

  uint64_t DroppedPackets() const;
  size_t FlowsDelivered() const;
  size_t FlowsInstalled() const;
  const FlowRecord* FindFlow(const std::string& id) const;
};

struct SimulationResult {
  MetricsReport report;
  std::unique_ptr<World> world;  // final state
};

// Reactive: rules appear on first-packet misses. Proactive: a reactive
// planning pass, then a fresh world with the planned tables installed up
// front runs the same traffic.
SimulationResult Simulate(const Scenario& scenario);
MetricsReport Run(const Scenario& scenario);

}  // namespace pbsa
