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

#include "pbsa/controller/controller.h"

#include <set>
#include <stdexcept>

namespace pbsa {

int DomainView::PortTo(const std::string& sw, const std::string& peer) const {
  auto s = ports.find(sw);
  if (s != ports.end()) {
    auto p = s->second.find(peer);
    if (p != s->second.end()) return p->second;
  }
  throw std::out_of_range("switch " + sw + " has no port towards " + peer);
}

std::optional<std::string> DomainView::GatewayTowards(
    const std::string& as_id) const {
  for (const auto& [gw, remote] : gateways) {
    if (remote == as_id) return gw;
  }
  return std::nullopt;
}

const char* ToString(DropReason reason) {
  switch (reason) {
    case DropReason::kPolicy:
      return "POLICY";
    case DropReason::kNoSatisfyingPath:
      return "NO_SATISFYING_PATH";
    case DropReason::kDefense:
      return "DEFENSE";
    case DropReason::kHandleInvalid:
      return "HANDLE_INVALID";
    case DropReason::kUnreachable:
      return "UNREACHABLE";
  }
  return "?";
}

FlowRule BlockRule(Ipv4Address offender) {
  FlowRule r;
  r.match.src_ip = offender;
  r.action = FlowAction::Drop();
  r.priority = kBlockPriority;
  r.provenance = "defense";
  return r;
}

FlowModBatch SynthesizeRules(const SwitchPath& path, const Packet& packet,
                             int in_port, int out_port, const DomainView& view,
                             const std::string& provenance,
                             std::optional<SecProfile> tags) {
  FlowModBatch batch;
  batch.provenance = provenance;
  for (size_t i = 0; i < path.size(); ++i) {
    const std::string& sw = path[i];
    int forward = i + 1 < path.size() ? view.PortTo(sw, path[i + 1]) : out_port;
    int back = i > 0 ? view.PortTo(sw, path[i - 1]) : in_port;

    FlowRule ret;
    ret.match.src_ip = packet.dst_ip;
    ret.match.dst_ip = packet.src_ip;
    ret.action = FlowAction::Output(back);
    ret.priority = kFlowPriority;
    ret.tags = tags;
    ret.provenance = provenance;

    FlowRule fwd;
    fwd.match.ip_proto = packet.ip_proto;
    fwd.match.src_ip = packet.src_ip;
    fwd.match.dst_ip = packet.dst_ip;
    if (packet.src_port != 0) fwd.match.src_port = packet.src_port;
    fwd.match.dst_port = packet.dst_port;
    fwd.action = FlowAction::Output(forward);
    fwd.priority = kFlowPriority;
    fwd.tags = tags;
    fwd.provenance = provenance;

    batch.mods.emplace_back(sw, std::move(ret));
    batch.mods.emplace_back(sw, std::move(fwd));
  }
  return batch;
}

Controller::Controller(ControllerConfig config) : config_(std::move(config)) {
  std::set<std::string> ids;
  for (const PolicyExpression& pe : config_.policies) {
    if (!ids.insert(pe.id).second) {
      throw std::invalid_argument("duplicate policy id " + pe.id + " in " +
                                  config_.as.id);
    }
  }
  auto key = config_.keys.find(config_.as.id);
  if (key == config_.keys.end() || key->second.empty()) {
    throw std::invalid_argument("no handle key for " + config_.as.id);
  }
  if (config_.defense) monitor_.emplace(*config_.defense);
}

Handle Controller::CreateHandle(const std::string& flow_id) const {
  Handle h{flow_id, config_.as.id, {config_.as.id}, ""};
  SignHandle(h, config_.keys.at(config_.as.id));
  return h;
}

Handle Controller::ExtendHandle(const Handle& h) const {
  if (!ValidateHandle(h, config_.as.id, config_.keys, config_.topo)) {
    throw IntegrityError("refusing to extend an invalid handle for " +
                         h.flow_id);
  }
  Handle out = h;
  out.visited.push_back(config_.as.id);
  SignHandle(out, config_.keys.at(config_.as.id));
  return out;
}

std::optional<PolicyTransferToken> Controller::CreatePtt(
    const std::string& flow_id, const Decision& decision,
    const std::optional<PolicyTransferToken>& incoming) const {
  std::vector<Constraint> carried;
  if (incoming) carried = incoming->constraints;
  MergedConstraints merged =
      MergeConstraints(carried, decision.ptt_constraints);
  if (merged.constraints.empty()) return std::nullopt;
  PolicyTransferToken t;
  t.flow_id = flow_id;
  t.origin_as = incoming ? incoming->origin_as : config_.as.id;
  t.issuer_as = config_.as.id;
  t.constraints = std::move(merged.constraints);
  SignToken(t, config_.keys.at(config_.as.id));
  return t;
}

namespace {

std::optional<AsInfo> InfoFor(const TopologyRepository& topo,
                              const std::optional<std::string>& id) {
  if (!id) return std::nullopt;
  if (*id == topo.owner.id) {
    return AsInfo{topo.owner.id, topo.owner.subnet, topo.owner.type,
                  topo.owner.label};
  }
  const TopologyEntry& e = topo.entries.at(*id);
  return AsInfo{e.as_id, e.subnet, e.as_type, e.label};
}

}  // namespace

FlowContext Controller::BuildContext(const PacketIn& in) const {
  const Packet& p = in.packet;
  FlowContext ctx;
  ctx.flow_id = FlowKey(p);
  ctx.src_as = InfoFor(config_.topo, config_.topo.AsForAddress(p.src_ip));
  ctx.dst_as = InfoFor(config_.topo, config_.topo.AsForAddress(p.dst_ip));
  ctx.src_ip = p.src_ip;
  ctx.dst_ip = p.dst_ip;
  ctx.src_mac = p.src_mac;
  ctx.dst_mac = p.dst_mac;
  auto user = config_.identities.find(p.src_mac);
  if (user != config_.identities.end()) ctx.user = user->second;
  ctx.service_port = p.dst_port;
  ctx.ip_proto = p.ip_proto;
  ctx.packet_type = p.packet_type;
  ctx.signature = p.signature;
  ctx.ingress_gateway = in.switch_id;
  ctx.timestamp = in.tick;
  return ctx;
}

bool Controller::RateExceeded(const std::string& pe_id, int64_t limit,
                              int64_t tick) {
  int64_t window = config_.defense ? config_.defense->window : 1000000;
  std::deque<int64_t>& q = setups_[pe_id];
  while (!q.empty() && q.front() <= tick - window) q.pop_front();
  if (static_cast<int64_t>(q.size()) >= limit) return true;
  q.push_back(tick);
  return false;
}

PacketInResult Controller::HandlePacketIn(const PacketIn& in) {
  ControllerEvent ev;
  ev.tick = in.tick;
  ev.as_id = config_.as.id;
  ev.switch_id = in.switch_id;
  ev.flow_id = FlowKey(in.packet);
  PacketInResult r = config_.pbsa ? Pipeline(in, ev) : Baseline(in);
  ev.matched_pe = r.decision.matched_pe.value_or("-");
  ev.allowed = r.allowed;
  if (r.drop) ev.reason = ToString(*r.drop);
  ev.detail = r.detail;
  ev.rules = r.batch.mods.size();
  ev.cost_ticks = r.cost_ticks;
  events_.push_back(std::move(ev));
  return r;
}

PacketInResult Controller::Pipeline(const PacketIn& in, ControllerEvent& ev) {
  const CostModel& cost = config_.costs;
  const DomainView& view = config_.view;
  const std::string& self = config_.as.id;
  const Packet& p = in.packet;
  const std::string flow = FlowKey(p);

  PacketInResult r;
  r.cost_ticks = cost.context;
  auto drop = [&r](DropReason why, std::string detail) {
    r.drop = why;
    r.detail = std::move(detail);
    return r;
  };

  if (monitor_) {
    r.cost_ticks += cost.defense;
    CheckResult chk =
        monitor_->RecordAndCheck(p.src_ip.ToString(), in.switch_id, in.tick);
    if (chk.host_over || chk.switch_over) {
      ev.defense = "host=" + p.src_ip.ToString() +
                   " host_rate=" + chk.host_rate.ToString() +
                   " thost=" + chk.host_threshold.ToString() +
                   " switch_rate=" + chk.switch_rate.ToString() +
                   " tsw=" + chk.switch_threshold.ToString();
    }
    if (chk.verdict == DefenseVerdict::kThrottle) {
      return drop(DropReason::kDefense, "throttled");
    }
    if (chk.verdict == DefenseVerdict::kDropRule) {
      if (!chk.new_block) return drop(DropReason::kDefense, "blocked host");
      r.batch.provenance = "defense";
      r.batch.mods.emplace_back(in.switch_id, BlockRule(p.src_ip));
      r.cost_ticks += cost.per_rule;
      return drop(DropReason::kDefense, "block rule installed");
    }
  }

  // Packets entering over an external link must carry a valid handle.
  std::optional<Handle> handle;
  std::optional<PolicyTransferToken> ptt;
  auto gw = view.gateways.find(in.switch_id);
  bool external = false;
  if (gw != view.gateways.end()) {
    auto& peers = view.ports.at(in.switch_id);
    auto remote = peers.find(GatewayName(gw->second, self));
    external = remote != peers.end() && remote->second == in.in_port;
  }
  if (external) {
    r.cost_ticks += cost.handle;
    if (!p.handle) {
      ev.security_events.push_back("missing handle");
      return drop(DropReason::kHandleInvalid, "no handle on packet from " +
                                                  gw->second);
    }
    if (p.handle->flow_id != flow || p.handle->visited.empty() ||
        p.handle->visited.back() != gw->second ||
        !ValidateHandle(*p.handle, self, config_.keys, config_.topo)) {
      ev.security_events.push_back("handle rejected");
      return drop(DropReason::kHandleInvalid, "handle failed validation");
    }
    handle = p.handle;
    if (p.ptt) {
      bool ok = p.ptt->flow_id == flow && p.ptt->issuer_as == gw->second &&
                VerifyTokenTag(*p.ptt, config_.keys);
      for (const Constraint& c : p.ptt->constraints) ok &= c.flow_scoped();
      if (ok) {
        ptt = p.ptt;
      } else {
        ev.security_events.push_back("ptt rejected");
      }
    }
  }

  FlowContext ctx = BuildContext(in);
  if (handle) ctx.traversed_path = handle->visited;

  r.cost_ticks += cost.select_base +
                  static_cast<int64_t>(config_.policies.size()) *
                      cost.select_per_pe_milli / 1000;
  r.decision = SelectPolicy(config_.policies, ctx);
  const Decision& d = r.decision;
  if (d.verdict != Verdict::kAllow) {
    return drop(DropReason::kPolicy,
                d.matched_pe ? "denied by " + *d.matched_pe : "default deny");
  }

  std::vector<Constraint> delegated;
  if (ptt) delegated = ptt->constraints;
  for (const Constraint& c : delegated) {
    if (c.is_match_condition() && !ConditionHolds(c, ctx)) {
      return drop(DropReason::kPolicy, "delegated " + c.ToString() + " not met");
    }
  }
  std::vector<Constraint> local;
  if (d.label_obligation) local = LabelRangeConstraints(*d.label_obligation);
  if (d.label_obligation && !d.label_obligation->Satisfiable()) {
    return drop(DropReason::kPolicy, "unsatisfiable label constraints");
  }
  MergedConstraints sw_cons = MergeConstraints(local, delegated);
  if (!sw_cons.satisfiable) {
    return drop(DropReason::kPolicy, "unsatisfiable merged constraints");
  }
  LabelRange sw_range = CollectLabelRange(sw_cons.constraints).value_or(LabelRange{});

  std::optional<int64_t> rate = d.rate_limit;
  for (const Constraint& c : delegated) {
    if (c.kind == Constraint::Kind::kRateThreshold) {
      rate = rate ? std::min(*rate, c.rate) : c.rate;
    }
  }
  if (rate && RateExceeded(*d.matched_pe, *rate, in.tick)) {
    return drop(DropReason::kPolicy, "rate threshold " + std::to_string(*rate));
  }

  r.cost_ticks += cost.path;
  std::string egress;
  int out_port = 0;
  auto host = view.hosts.find(p.dst_ip);
  if (host != view.hosts.end()) {
    egress = host->second.switch_id;
    out_port = view.PortTo(egress, host->second.id);
    r.deliver_local = true;
  } else {
    std::optional<std::string> dst_as = config_.topo.AsForAddress(p.dst_ip);
    if (!dst_as) return drop(DropReason::kUnreachable, "no AS announces dst");
    if (*dst_as == self) return drop(DropReason::kUnreachable, "no such host");

    MergedConstraints as_cons = MergeConstraints(d.ptt_constraints, delegated);
    LabelRange as_range =
        CollectLabelRange(as_cons.constraints).value_or(LabelRange{});
    if (!as_cons.satisfiable || (handle && !as_range.SatisfiedBy(config_.as.label))) {
      return drop(DropReason::kPolicy, "transit label outside " + as_range.ToString());
    }
    std::set<std::string> avoid;
    if (handle) avoid.insert(handle->visited.begin(), handle->visited.end());
    std::vector<AsPath> paths =
        FindAsPaths(config_.topo, self, *dst_as, as_range, avoid);
    std::optional<std::string> next;
    if (d.exit_obligation) {
      auto pinned = view.gateways.find(*d.exit_obligation);
      if (pinned == view.gateways.end()) {
        return drop(DropReason::kNoSatisfyingPath,
                    "exit " + *d.exit_obligation + " is not a gateway of " + self);
      }
      for (const AsPath& path : paths) {
        if (path.size() > 1 && path[1] == pinned->second) {
          next = pinned->second;
          break;
        }
      }
    } else if (!paths.empty()) {
      next = paths.front()[1];
    }
    if (!next) {
      return drop(DropReason::kNoSatisfyingPath,
                  "no AS path to " + *dst_as + " within " + as_range.ToString());
    }
    auto gateway = view.GatewayTowards(*next);
    if (!gateway) {
      return drop(DropReason::kNoSatisfyingPath, "no gateway towards " + *next);
    }
    egress = *gateway;
    out_port = view.PortTo(egress, GatewayName(*next, self));
    r.next_as = next;
  }

  try {
    r.path = FindSwitchPath(view.graph, in.switch_id, egress,
                            d.path_obligation, sw_range);
  } catch (const NoPathError& e) {
    return drop(DropReason::kNoSatisfyingPath, e.what());
  }
  r.batch = SynthesizeRules(r.path, p, in.in_port, out_port, view,
                            *d.matched_pe, d.sec_profile);
  r.cost_ticks += cost.per_rule * static_cast<int64_t>(r.batch.mods.size());

  if (handle) {
    r.handle = ExtendHandle(*handle);
    r.cost_ticks += cost.handle;
  } else if (r.next_as) {
    r.handle = CreateHandle(flow);
    r.cost_ticks += cost.handle;
  }
  if (r.next_as) r.ptt = CreatePtt(flow, d, ptt);
  r.allowed = true;
  return r;
}

PacketInResult Controller::Baseline(const PacketIn& in) {
  const CostModel& cost = config_.costs;
  const DomainView& view = config_.view;
  const std::string& self = config_.as.id;
  const Packet& p = in.packet;
  PacketInResult r;
  r.cost_ticks = cost.context + cost.path;
  r.decision.verdict = Verdict::kAllow;

  std::string egress;
  int out_port = 0;
  auto host = view.hosts.find(p.dst_ip);
  if (host != view.hosts.end()) {
    egress = host->second.switch_id;
    out_port = view.PortTo(egress, host->second.id);
    r.deliver_local = true;
  } else {
    std::optional<std::string> dst_as = config_.topo.AsForAddress(p.dst_ip);
    if (!dst_as || *dst_as == self) {
      r.drop = DropReason::kUnreachable;
      r.detail = "no route";
      return r;
    }
    // Never hand the flow back to the domain it came from.
    std::set<std::string> avoid;
    auto gw = view.gateways.find(in.switch_id);
    if (gw != view.gateways.end() &&
        view.PortTo(in.switch_id, GatewayName(gw->second, self)) == in.in_port) {
      avoid.insert(gw->second);
    }
    std::vector<AsPath> paths =
        FindAsPaths(config_.topo, self, *dst_as, LabelRange{}, avoid);
    std::optional<std::string> gateway;
    if (!paths.empty()) gateway = view.GatewayTowards(paths.front()[1]);
    if (!gateway) {
      r.drop = DropReason::kUnreachable;
      r.detail = "no route";
      return r;
    }
    r.next_as = paths.front()[1];
    egress = *gateway;
    out_port = view.PortTo(egress, GatewayName(*r.next_as, self));
  }
  try {
    r.path = FindSwitchPath(view.graph, in.switch_id, egress, std::nullopt,
                            LabelRange{});
  } catch (const NoPathError& e) {
    r.drop = DropReason::kUnreachable;
    r.detail = e.what();
    return r;
  }
  r.batch = SynthesizeRules(r.path, p, in.in_port, out_port, view, "baseline",
                            std::nullopt);
  r.cost_ticks += cost.per_rule * static_cast<int64_t>(r.batch.mods.size());
  r.allowed = true;
  return r;
}

InterdomainOutcome ForwardInterdomain(Controller& ctrl,
                                      const AugmentedPacket& aug,
                                      const std::string& ingress_switch,
                                      int64_t tick) {
  const DomainView& view = ctrl.config().view;
  PacketIn in;
  in.switch_id = ingress_switch;
  in.tick = tick;
  in.packet = aug.packet;
  in.packet.handle = aug.handle;
  in.packet.ptt = aug.ptt;
  auto gw = view.gateways.find(ingress_switch);
  if (gw == view.gateways.end()) {
    throw std::invalid_argument(ingress_switch + " is not a gateway of " +
                                ctrl.as_id());
  }
  in.in_port = view.PortTo(ingress_switch, GatewayName(gw->second, ctrl.as_id()));
  InterdomainOutcome out;
  out.result = ctrl.HandlePacketIn(in);
  if (!out.result.allowed) {
    out.kind = InterdomainOutcome::Kind::kDrop;
  } else if (out.result.deliver_local) {
    out.kind = InterdomainOutcome::Kind::kDeliver;
  } else {
    out.kind = InterdomainOutcome::Kind::kNextHop;
    AugmentedPacket next;
    next.packet = aug.packet;
    next.handle = *out.result.handle;
    next.ptt = out.result.ptt;
    out.next = std::move(next);
  }
  return out;
}

}  // namespace pbsa
