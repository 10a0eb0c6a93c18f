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
#include <span>
#include <string>
#include <vector>

#include "pbsa/net/address.h"
#include "pbsa/policy/constraint.h"
#include "pbsa/policy/label.h"

namespace pbsa {

// Every std::optional field below uses nullopt as the `*` wildcard.

// Source or destination half of a Policy Expression: AS domain attributes
// plus host attributes.
struct EndpointSelector {
  std::optional<std::string> as_id;
  std::optional<Cidr> subnet;
  std::optional<std::string> as_type;
  LabelConstraint label_req;
  // Entry switch. Parsers store a destination-side exit switch in
  // PolicyExpression::action_exit instead, so this stays empty on `dest`.
  std::optional<std::string> gateway;
  std::optional<Ipv4Address> host_ip;
  std::optional<MacAddress> host_mac;

  int Specificity() const;

  friend bool operator==(const EndpointSelector&,
                         const EndpointSelector&) = default;
};

struct PortRange {
  uint16_t lo = 0;
  uint16_t hi = 0;
  friend bool operator==(const PortRange&, const PortRange&) = default;
};

struct ServiceSet {
  std::vector<PortRange> ranges;

  bool Contains(uint16_t port) const;
  friend bool operator==(const ServiceSet&, const ServiceSet&) = default;
};

// Requested protection services. Carried as rule tags only.
struct SecProfile {
  bool conf = false;
  bool intg = false;

  std::string ToString() const;  // "conf", "intg", "conf,intg"
  friend bool operator==(const SecProfile&, const SecProfile&) = default;
};

// AS-typed paths are provenance conditions checked against the Handle;
// switch-typed paths pin the intra-domain route.
enum class PathKind { kAs, kSwitch };

struct PolicyPath {
  PathKind kind = PathKind::kAs;
  std::vector<std::string> hops;

  friend bool operator==(const PolicyPath&, const PolicyPath&) = default;
};

enum class PolicyAction { kAllow, kDeny };

// Half-open [start, end) in simulation ticks.
struct TimeWindow {
  int64_t start = 0;
  int64_t end = 0;

  bool Contains(int64_t t) const { return start <= t && t < end; }
  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

struct PolicyExpression {
  std::string id;
  std::optional<std::string> flow_id;
  EndpointSelector source;
  EndpointSelector dest;
  std::optional<std::string> user;
  std::vector<Constraint> flow_cons;
  std::vector<Constraint> dom_cons;
  std::optional<ServiceSet> services;
  std::optional<SecProfile> sec_profile;
  std::optional<PolicyPath> path;
  PolicyAction action = PolicyAction::kDeny;
  std::optional<std::string> action_exit;
  std::optional<TimeWindow> validity;

  // Throws PolicyError on broken invariants (empty id, start > end, ...).
  void Validate() const;

  // Number of non-wildcard attributes; used to rank overlapping allows.
  int Specificity() const;

  friend bool operator==(const PolicyExpression&,
                         const PolicyExpression&) = default;
};

// What the controller knows about one end of a flow's AS domain.
struct AsInfo {
  std::string id;
  std::optional<Cidr> subnet;
  std::string type;
  SecurityLabel label{1};

  friend bool operator==(const AsInfo&, const AsInfo&) = default;
};

// Parameters extracted from a packet_in plus the Handle, if any.
struct FlowContext {
  std::string flow_id;
  std::optional<AsInfo> src_as;
  std::optional<AsInfo> dst_as;
  Ipv4Address src_ip;
  Ipv4Address dst_ip;
  MacAddress src_mac;
  MacAddress dst_mac;
  std::optional<std::string> user;
  uint16_t service_port = 0;
  std::string ip_proto = "TCP";
  std::string packet_type;
  std::optional<std::string> signature;
  std::optional<std::string> ingress_gateway;
  int64_t timestamp = 0;
  std::vector<std::string> traversed_path;
};

enum class Verdict { kAllow, kDeny };

struct Decision {
  Verdict verdict = Verdict::kDeny;
  // Set for every ALLOW; for DENY only when an explicit deny PE matched.
  std::optional<std::string> matched_pe;
  std::optional<std::vector<std::string>> path_obligation;
  std::optional<LabelRange> label_obligation;
  std::optional<std::string> exit_obligation;
  std::vector<Constraint> ptt_constraints;
  std::optional<int64_t> rate_limit;
  std::optional<SecProfile> sec_profile;
};

bool MatchPe(const PolicyExpression& pe, const FlowContext& ctx);

// Packet-attribute and signature constraints against `ctx`; other kinds
// hold trivially.
bool ConditionHolds(const Constraint& c, const FlowContext& ctx);

// Default deny, then deny-overrides, then the most specific allow (ties go
// to the lexicographically smallest id).
Decision SelectPolicy(std::span<const PolicyExpression> pes,
                      const FlowContext& ctx);

// Intersection of all label-path constraints in `cons`; nullopt if none.
std::optional<LabelRange> CollectLabelRange(
    std::span<const Constraint> cons);

}  // namespace pbsa
