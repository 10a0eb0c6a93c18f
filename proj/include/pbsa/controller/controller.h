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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbsa/dataplane/flow_rule.h"
#include "pbsa/defense/flood_monitor.h"
#include "pbsa/interdomain/exchange.h"
#include "pbsa/policy/expression.h"
#include "pbsa/topology/graph.h"
#include "pbsa/topology/paths.h"
#include "pbsa/topology/repository.h"

namespace pbsa {

struct HostBinding {
  std::string id;
  Ipv4Address ip;
  MacAddress mac;
  std::string switch_id;
};

// Static wiring of one domain as its controller sees it.
struct DomainView {
  IntraGraph graph;
  // switch -> peer (switch, host or remote gateway) -> local port
  std::map<std::string, std::map<std::string, int>> ports;
  std::map<Ipv4Address, HostBinding> hosts;
  // local gateway switch -> AS on the other side of its external link
  std::map<std::string, std::string> gateways;

  // Throws std::out_of_range if `sw` has no port facing `peer`.
  int PortTo(const std::string& sw, const std::string& peer) const;
  std::optional<std::string> GatewayTowards(const std::string& as_id) const;
};

// Processing cost of each pipeline stage in ticks.
struct CostModel {
  int64_t context = 1;
  int64_t defense = 1;
  int64_t select_base = 1;
  int64_t select_per_pe_milli = 500;  // thousandths of a tick per loaded PE
  int64_t handle = 2;                 // tag verification or signing
  int64_t path = 2;
  int64_t per_rule = 1;
};

enum class DropReason {
  kPolicy,
  kNoSatisfyingPath,
  kDefense,
  kHandleInvalid,
  kUnreachable,
};
const char* ToString(DropReason reason);

struct PacketIn {
  std::string switch_id;
  int in_port = 0;
  Packet packet;
  int64_t tick = 0;
};

struct FlowModBatch {
  std::vector<std::pair<std::string, FlowRule>> mods;
  std::string provenance;
};

struct PacketInResult {
  bool allowed = false;
  std::optional<DropReason> drop;
  std::string detail;
  // ALLOW: forward and return rules along `path`. DROP: empty, or a single
  // block rule when the defense fired.
  FlowModBatch batch;
  SwitchPath path;
  bool deliver_local = false;
  std::optional<std::string> next_as;
  // After the local append; absent for purely intra-domain flows.
  std::optional<Handle> handle;
  std::optional<PolicyTransferToken> ptt;
  Decision decision;
  int64_t cost_ticks = 0;
};

struct ControllerEvent {
  int64_t tick = 0;
  std::string as_id;
  std::string switch_id;
  std::string flow_id;
  std::string matched_pe;  // "-" when none
  bool allowed = false;
  std::string reason;  // DropReason text, empty on ALLOW
  std::string detail;
  size_t rules = 0;
  int64_t cost_ticks = 0;
  std::string defense;  // rates and thresholds when a threshold was crossed
  std::vector<std::string> security_events;
};

struct ControllerConfig {
  AsDescriptor as;
  DomainView view;
  std::vector<PolicyExpression> policies;
  TopologyRepository topo;
  // Own key plus verification keys of neighbouring domains.
  Keyring keys;
  std::map<MacAddress, std::string> identities;
  std::optional<MonitorConfig> defense;
  CostModel costs;
  // false: allow-all shortest-path baseline without policy or handles.
  bool pbsa = true;
};

class Controller {
 public:
  // Throws std::invalid_argument on duplicate PE ids or a missing own key.
  explicit Controller(ControllerConfig config);

  PacketInResult HandlePacketIn(const PacketIn& in);

  Handle CreateHandle(const std::string& flow_id) const;
  // Throws IntegrityError unless ValidateHandle accepts `h`.
  Handle ExtendHandle(const Handle& h) const;
  // Token for the next domain: `incoming` constraints merged with the
  // decision's flow-scoped ones, origin preserved, re-issued by this AS.
  // nullopt when there is nothing to delegate.
  std::optional<PolicyTransferToken> CreatePtt(
      const std::string& flow_id, const Decision& decision,
      const std::optional<PolicyTransferToken>& incoming) const;

  const std::string& as_id() const { return config_.as.id; }
  const ControllerConfig& config() const { return config_; }
  const std::vector<ControllerEvent>& events() const { return events_; }
  const FloodMonitor* monitor() const { return monitor_ ? &*monitor_ : nullptr; }
  FloodMonitor* monitor() { return monitor_ ? &*monitor_ : nullptr; }

 private:
  PacketInResult Pipeline(const PacketIn& in, ControllerEvent& ev);
  PacketInResult Baseline(const PacketIn& in);
  FlowContext BuildContext(const PacketIn& in) const;
  bool RateExceeded(const std::string& pe_id, int64_t limit, int64_t tick);

  ControllerConfig config_;
  std::optional<FloodMonitor> monitor_;
  std::map<std::string, std::deque<int64_t>> setups_;  // per PE, for rate<=
  std::vector<ControllerEvent> events_;
};

// Forward rule for the flow plus a return rule for the reverse direction
// on every switch of `path`, return rule first. `in_port` is where the
// packet entered path.front(); `out_port` is where it leaves path.back().
FlowModBatch SynthesizeRules(const SwitchPath& path, const Packet& packet,
                             int in_port, int out_port, const DomainView& view,
                             const std::string& provenance,
                             std::optional<SecProfile> tags);

// Drop rule for everything from `offender`.
FlowRule BlockRule(Ipv4Address offender);

struct InterdomainOutcome {
  enum class Kind { kNextHop, kDeliver, kDrop };
  Kind kind = Kind::kDrop;
  PacketInResult result;
  // kNextHop: what leaves through the egress gateway.
  std::optional<AugmentedPacket> next;
};

// Runs the pipeline for an augmented packet arriving at `ingress_switch`,
// a gateway of `ctrl`'s domain.
InterdomainOutcome ForwardInterdomain(Controller& ctrl,
                                      const AugmentedPacket& aug,
                                      const std::string& ingress_switch,
                                      int64_t tick);

}  // namespace pbsa
