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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pbsa/topology/graph.h"

namespace pbsa {

// Payload of the TTL-exceeded reply: who answered, at which TTL, and which
// AS handed the probe over.
struct ProbeReply {
  std::string sender_controller;
  std::string as_id;
  Cidr subnet;
  std::string as_type;
  SecurityLabel label{1};
  int ttl = 0;
  std::string via_as;
};

struct TopologyEntry {
  std::string as_id;
  SecurityLabel label{1};
  int hops = 0;
  std::string next_hop_gateway;
  Cidr subnet;
  std::string as_type;

  friend bool operator==(const TopologyEntry&, const TopologyEntry&) = default;
};

struct TopologyRepository {
  AsDescriptor owner;
  std::map<std::string, TopologyEntry> entries;
  // Undirected AS adjacencies learned from replies, stored as (min, max).
  std::set<std::pair<std::string, std::string>> links;

  bool Knows(const std::string& as_id) const {
    return as_id == owner.id || entries.count(as_id) > 0;
  }
  std::optional<SecurityLabel> LabelOf(const std::string& as_id) const;
  // AS whose subnet contains `ip`; the longest prefix wins.
  std::optional<std::string> AsForAddress(Ipv4Address ip) const;
  std::set<std::string> Neighbors(const std::string& as_id) const;

  friend bool operator==(const TopologyRepository&,
                         const TopologyRepository&) = default;
};

// Every reply the probe from `owner` collects with TTL 1..max_ttl, in
// emission order.
std::vector<ProbeReply> SendProbes(const AsGraph& world,
                                   const std::string& owner, int max_ttl);

// Throws std::invalid_argument for max_ttl < 1 or an unknown owner.
TopologyRepository ProbeTopology(const AsGraph& world,
                                 const std::string& owner, int max_ttl);

}  // namespace pbsa
