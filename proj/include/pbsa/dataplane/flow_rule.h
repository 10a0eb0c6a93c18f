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
#include <optional>
#include <string>

#include "pbsa/dataplane/packet.h"
#include "pbsa/policy/expression.h"

namespace pbsa {

// Unset fields are wildcards. A match without packet_type selects IP
// packets only, so ARP needs an explicit packet_type="ARP" rule.
struct FlowMatch {
  std::optional<std::string> packet_type;
  std::optional<int> in_port;
  std::optional<std::string> ip_proto;
  std::optional<Ipv4Address> src_ip;
  std::optional<Ipv4Address> dst_ip;
  std::optional<uint16_t> src_port;
  std::optional<uint16_t> dst_port;

  bool Matches(const Packet& p, int in_port) const;
  // e.g. "tcp,nw_src=10.0.0.2,nw_dst=10.0.0.9,tp_dst=80"
  std::string ToString() const;

  friend bool operator==(const FlowMatch&, const FlowMatch&) = default;
};

struct FlowAction {
  enum class Kind { kOutput, kDrop, kController };
  Kind kind = Kind::kDrop;
  int port = 0;

  static FlowAction Output(int port) { return {Kind::kOutput, port}; }
  static FlowAction Drop() { return {Kind::kDrop, 0}; }
  static FlowAction Controller() { return {Kind::kController, 0}; }

  std::string ToString() const;  // "output:2", "drop", "CONTROLLER"
  friend bool operator==(const FlowAction&, const FlowAction&) = default;
};

struct FlowRule {
  FlowMatch match;
  FlowAction action;
  int priority = 0;
  std::optional<SecProfile> tags;
  std::string provenance;  // id of the PE that authorised the rule
  uint64_t packets = 0;
  uint64_t bytes = 0;

  // Canonical dump line; counters are not part of it.
  std::string ToString() const;
};

inline constexpr int kDiscoveryPriority = 40000;
inline constexpr int kFlowPriority = 10;
inline constexpr int kBlockPriority = 60000;

// Controller-installed ARP rule present on every switch.
FlowRule DiscoveryRule();

}  // namespace pbsa
