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

// Scenario documents: one JSON object describing domains, switches,
// hosts, policies, inter-domain links and a traffic program. The schema is
// documented in docs/scenario-format.md.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pbsa/controller/controller.h"

namespace pbsa {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SwitchSpec {
  std::string id;
  SecurityLabel label{1};
  bool gateway = false;
};

struct HostSpec {
  std::string id;
  Ipv4Address ip;
  MacAddress mac;
  std::string switch_id;
};

struct DomainSpec {
  AsDescriptor as;
  std::string key;
  std::vector<SwitchSpec> switches;
  std::vector<std::pair<std::string, std::string>> links;
  std::vector<HostSpec> hosts;
  std::map<MacAddress, std::string> identities;
  std::vector<PolicyExpression> policies;
  std::optional<MonitorConfig> defense;
  CostModel costs;
  size_t table_capacity = 1024;
};

// One flow attempt: `packets` packets `interval` ticks apart.
struct FlowSpec {
  std::string id;
  std::string src_host;
  Ipv4Address dst_ip;
  std::string proto = "TCP";
  uint16_t src_port = 0;
  uint16_t dst_port = 0;
  std::string type;
  std::optional<std::string> signature;
  int64_t start = 0;
  int packets = 1;
  int64_t interval = 0;
  std::string group;  // burst id for expanded bursts, else empty
};

// `rate` single-packet flows per `window` ticks from one host, each with a
// fresh source port, for `duration` ticks.
struct BurstSpec {
  std::string id;
  std::string src_host;
  Ipv4Address dst_ip;
  std::string proto = "TCP";
  uint16_t dst_port = 0;
  std::string type;
  int64_t start = 0;
  int64_t duration = 0;
  int64_t rate = 0;
  int64_t window = 1000;
};

struct Timing {
  int64_t link = 1;      // per hop, host and gateway links included
  int64_t control = 2;   // switch <-> controller, one way
  size_t queue_capacity = 0;  // packet_ins waiting per controller; 0 = unbounded
  std::optional<int64_t> horizon;  // stop processing after this tick
};

struct Scenario {
  std::string name;
  uint64_t seed = 1;
  bool proactive = false;
  bool pbsa = true;
  std::vector<DomainSpec> domains;
  std::vector<std::pair<std::string, std::string>> as_links;
  int probe_ttl = 16;
  Timing timing;
  std::vector<FlowSpec> flows;
  std::vector<BurstSpec> bursts;
  // Raw generator block, kept for sweeps.
  std::optional<nlohmann::json> generator;

  const DomainSpec* FindDomain(const std::string& id) const;
  // Domain owning `host_id`, or nullptr.
  const DomainSpec* DomainOfHost(const std::string& host_id) const;
  const HostSpec* FindHost(const std::string& host_id) const;
};

// Throws ScenarioError naming the offending field path. Relative
// "policies_file" references resolve against `base_dir`.
Scenario ParseScenario(const nlohmann::json& doc,
                       const std::filesystem::path& base_dir = ".");
Scenario LoadScenario(const std::filesystem::path& path);
// Reads the document, following nothing; used by sweeps that rewrite the
// generator block before parsing.
nlohmann::json LoadScenarioDocument(const std::filesystem::path& path);

// Expands bursts into flows (deterministic under scenario.seed) and merges
// them with the explicit flows, ordered by start tick (ties keep
// declaration order).
std::vector<FlowSpec> TrafficProgram(const Scenario& scenario);

}  // namespace pbsa
