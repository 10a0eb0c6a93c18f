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

#include "pbsa/harness/simulator.h"

#include <algorithm>
#include <deque>
#include <queue>
#include <tuple>

namespace pbsa {

World::World(const Scenario& scenario) : scenario_(scenario) {
  for (const DomainSpec& d : scenario_.domains) as_graph_.AddAs(d.as);
  for (const auto& [a, b] : scenario_.as_links) as_graph_.AddLink(a, b);

  // Peers of every switch in port order.
  std::map<std::string, std::vector<std::pair<std::string, PortPeer::Kind>>> peers;
  for (const DomainSpec& d : scenario_.domains) {
    for (const SwitchSpec& sw : d.switches) {
      peers[sw.id];
      switch_domain_[sw.id] = d.as.id;
    }
    for (const auto& [a, b] : d.links) {
      peers[a].emplace_back(b, PortPeer::Kind::kSwitch);
      peers[b].emplace_back(a, PortPeer::Kind::kSwitch);
    }
    for (const HostSpec& h : d.hosts) {
      peers[h.switch_id].emplace_back(h.id, PortPeer::Kind::kHost);
    }
  }
  for (const auto& [a, b] : scenario_.as_links) {
    std::string ga = GatewayName(a, b), gb = GatewayName(b, a);
    peers[ga].emplace_back(gb, PortPeer::Kind::kExternal);
    peers[gb].emplace_back(ga, PortPeer::Kind::kExternal);
  }
  std::map<std::string, std::map<std::string, int>> port_of;
  for (const auto& [sw, list] : peers) {
    for (size_t i = 0; i < list.size(); ++i) {
      port_of[sw][list[i].first] = static_cast<int>(i + 1);
    }
  }

  for (const DomainSpec& d : scenario_.domains) {
    DomainView view;
    for (const SwitchSpec& spec : d.switches) {
      Switch sw(spec.id, spec.label, d.table_capacity);
      for (const auto& [peer, kind] : peers[spec.id]) {
        int peer_port = kind == PortPeer::Kind::kHost ? 0 : port_of[peer][spec.id];
        sw.AddPort({kind, peer, peer_port, true});
      }
      sw.Install(DiscoveryRule());
      switches_.emplace(spec.id, std::move(sw));
      view.graph.AddSwitch(spec.id, spec.label, spec.gateway);
      view.ports[spec.id] = port_of[spec.id];
    }
    for (const auto& [a, b] : d.links) view.graph.AddLink(a, b);
    for (const HostSpec& h : d.hosts) {
      view.hosts[h.ip] = HostBinding{h.id, h.ip, h.mac, h.switch_id};
    }
    Keyring keys{{d.as.id, d.key}};
    for (const auto& [a, b] : scenario_.as_links) {
      if (a == d.as.id) {
        view.gateways[GatewayName(a, b)] = b;
        keys[b] = scenario_.FindDomain(b)->key;
      }
      if (b == d.as.id) {
        view.gateways[GatewayName(b, a)] = a;
        keys[a] = scenario_.FindDomain(a)->key;
      }
    }
    ControllerConfig cfg;
    cfg.as = d.as;
    cfg.view = std::move(view);
    cfg.policies = d.policies;
    cfg.topo = ProbeTopology(as_graph_, d.as.id, scenario_.probe_ttl);
    cfg.keys = std::move(keys);
    cfg.identities = d.identities;
    cfg.defense = d.defense;
    cfg.costs = d.costs;
    cfg.pbsa = scenario_.pbsa;
    controllers_[d.as.id] = std::make_unique<Controller>(std::move(cfg));
  }
}

uint64_t MetricsReport::DroppedPackets() const {
  uint64_t n = 0;
  for (const auto& [reason, count] : drops) n += count;
  return n;
}

size_t MetricsReport::FlowsDelivered() const {
  return static_cast<size_t>(std::count_if(flows.begin(), flows.end(), [](const FlowRecord& f) {
    return f.outcome == "DELIVERED";
  }));
}

size_t MetricsReport::FlowsInstalled() const {
  return static_cast<size_t>(std::count_if(flows.begin(), flows.end(), [](const FlowRecord& f) {
    return f.install_tick.has_value();
  }));
}

const FlowRecord* MetricsReport::FindFlow(const std::string& id) const {
  for (const FlowRecord& f : flows) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

namespace {

constexpr int kMaxHops = 256;

using DomainFlow = std::pair<std::string, std::string>;  // (AS or switch, flow key)

struct Augmentation {
  Handle handle;
  std::optional<PolicyTransferToken> ptt;
};

struct Event {
  enum class Kind { kArrive, kPacketIn, kDecision, kInstall };
  int64_t tick = 0;
  uint64_t seq = 0;
  Kind kind = Kind::kArrive;
  std::string sw;
  int port = 0;
  Packet packet;
  uint64_t pid = 0;
  bool reinjected = false;
  std::shared_ptr<const PacketInResult> result;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    return std::tie(a.tick, a.seq) > std::tie(b.tick, b.seq);
  }
};

struct PacketState {
  size_t flow = 0;
  int index = 0;
  int hops = 0;
  bool done = false;
  std::vector<std::string> switches;
  std::vector<std::string> domains;
};

class Simulator {
 public:
  Simulator(World& world, MetricsReport& report)
      : world_(world), scenario_(world.scenario()), report_(report) {}

  std::map<DomainFlow, Augmentation> augmentations;
  std::map<DomainFlow, std::vector<std::string>> delivered_handles;

  void Run() {
    program_ = TrafficProgram(scenario_);
    for (size_t f = 0; f < program_.size(); ++f) Inject(f);
    int64_t now = 0;
    while (!queue_.empty()) {
      Event ev = queue_.top();
      if (scenario_.timing.horizon && ev.tick > *scenario_.timing.horizon) break;
      queue_.pop();
      now = ev.tick;
      switch (ev.kind) {
        case Event::Kind::kArrive:
          Arrive(ev);
          break;
        case Event::Kind::kPacketIn:
          PacketInArrive(ev);
          break;
        case Event::Kind::kDecision:
          Decide(ev);
          break;
        case Event::Kind::kInstall:
          Install(ev);
          break;
      }
    }
    for (uint64_t pid = 0; pid < packets_.size(); ++pid) {
      if (!packets_[pid].done) Drop(pid, "HORIZON", "");
    }
    report_.end_tick = now;
  }

 private:
  void Push(Event ev) {
    ev.seq = seq_++;
    queue_.push(std::move(ev));
  }

  void Inject(size_t f) {
    const FlowSpec& spec = program_[f];
    const HostSpec& src = *scenario_.FindHost(spec.src_host);
    FlowRecord rec;
    rec.id = spec.id;
    rec.group = spec.group;
    rec.src_host = spec.src_host;
    rec.start = spec.start;
    rec.packets = spec.packets;
    rec.outcome = "PENDING";
    Packet p;
    p.src_ip = src.ip;
    p.dst_ip = spec.dst_ip;
    p.src_mac = src.mac;
    for (const DomainSpec& d : scenario_.domains) {
      for (const HostSpec& h : d.hosts) {
        if (h.ip == spec.dst_ip) p.dst_mac = h.mac;
      }
    }
    p.ip_proto = spec.proto;
    p.src_port = spec.src_port;
    p.dst_port = spec.dst_port;
    p.packet_type = spec.type;
    p.signature = spec.signature;
    rec.flow_key = FlowKey(p);
    report_.flows.push_back(rec);

    int port = world_.switch_at(src.switch_id).PortTo(src.id);
    for (int k = 0; k < spec.packets; ++k) {
      Event ev;
      ev.kind = Event::Kind::kArrive;
      ev.tick = spec.start + k * spec.interval + scenario_.timing.link;
      ev.sw = src.switch_id;
      ev.port = port;
      ev.packet = p;
      ev.packet.timestamp = spec.start + k * spec.interval;
      ev.pid = packets_.size();
      packets_.push_back({f, k, 0, false, {}, {}});
      ++report_.offered_packets;
      Push(std::move(ev));
    }
  }

  void Arrive(const Event& ev) {
    PacketState& ps = packets_[ev.pid];
    if (ps.done) return;
    const std::string& domain = world_.DomainOfSwitch(ev.sw);
    if (!ev.reinjected) {
      if (++ps.hops > kMaxHops) return Drop(ev.pid, "LOOP", domain);
      ps.switches.push_back(ev.sw);
      if (ps.domains.empty() || ps.domains.back() != domain) ps.domains.push_back(domain);
    }
    Switch& sw = world_.switch_at(ev.sw);
    ForwardOutcome out = sw.ProcessPacket(ev.packet, ev.port);
    switch (out.kind) {
      case ForwardOutcome::Kind::kForward: {
        const PortPeer& peer = sw.ports().at(out.port);
        Event next;
        next.kind = Event::Kind::kArrive;
        next.tick = ev.tick + scenario_.timing.link;
        next.pid = ev.pid;
        next.packet = ev.packet;
        if (peer.kind == PortPeer::Kind::kHost) {
          const HostSpec* host = scenario_.FindHost(peer.id);
          if (host && host->ip == ev.packet.dst_ip) {
            return Deliver(ev.pid, next.tick, domain);
          }
          return Drop(ev.pid, "NO_ROUTE", domain);
        }
        if (peer.kind == PortPeer::Kind::kExternal) {
          auto aug = augmentations.find({domain, FlowKey(ev.packet)});
          if (aug != augmentations.end()) {
            next.packet.handle = aug->second.handle;
            next.packet.ptt = aug->second.ptt;
          } else {
            next.packet.handle.reset();
            next.packet.ptt.reset();
          }
        }
        next.sw = peer.id;
        next.port = peer.peer_port;
        return Push(std::move(next));
      }
      case ForwardOutcome::Kind::kPacketIn: {
        std::string key = FlowKey(ev.packet);
        auto slot = buffered_.find({ev.sw, key});
        if (slot != buffered_.end() && slot->second != ev.pid) {
          Drop(slot->second, "BUFFER_REPLACED", domain);
        }
        buffered_[{ev.sw, key}] = ev.pid;
        Event in;
        in.kind = Event::Kind::kPacketIn;
        in.tick = ev.tick + scenario_.timing.control;
        in.sw = ev.sw;
        in.port = ev.port;
        in.packet = ev.packet;
        in.pid = ev.pid;
        return Push(std::move(in));
      }
      case ForwardOutcome::Kind::kDrop:
        return Drop(ev.pid, out.provenance == "defense" ? "DEFENSE" : "POLICY", domain);
      case ForwardOutcome::Kind::kLinkDown:
        return Drop(ev.pid, "LINK_DOWN", domain);
    }
  }

  void PacketInArrive(const Event& ev) {
    const std::string& domain = world_.DomainOfSwitch(ev.sw);
    const std::string key = FlowKey(ev.packet);
    Queue& q = queues_[domain];
    while (!q.starts.empty() && q.starts.front() <= ev.tick) q.starts.pop_front();

    PacketInRecord rec;
    rec.tick = ev.tick;
    rec.as_id = domain;
    rec.switch_id = ev.sw;
    rec.flow_id = key;
    size_t cap = scenario_.timing.queue_capacity;
    if (cap > 0 && q.starts.size() >= cap) {
      rec.matched_pe = "-";
      rec.reason = "OVERLOAD";
      report_.packet_ins.push_back(rec);
      return DropBuffered(ev.sw, key, "OVERLOAD", domain);
    }

    int64_t start = std::max(ev.tick, q.busy_until);
    PacketIn in{ev.sw, ev.port, ev.packet, start};
    auto result = std::make_shared<PacketInResult>(
        world_.controller(domain).HandlePacketIn(in));
    int64_t done = start + result->cost_ticks;
    q.busy_until = done;
    q.starts.push_back(start);

    rec.matched_pe = result->decision.matched_pe.value_or("-");
    rec.allowed = result->allowed;
    if (result->drop) rec.reason = ToString(*result->drop);
    rec.detail = result->detail;
    rec.rules = result->batch.mods.size();
    rec.cost_ticks = result->cost_ticks;
    rec.latency_ticks = done - ev.tick;
    const auto& events = world_.controller(domain).events();
    if (!events.empty()) rec.defense = events.back().defense;
    report_.packet_ins.push_back(rec);

    if (result->allowed) {
      if (result->next_as && result->handle) {
        augmentations[{domain, key}] = {*result->handle, result->ptt};
      }
      if (result->deliver_local && result->handle) {
        delivered_handles[{domain, key}] = result->handle->visited;
      }
      FlowRecord& flow = report_.flows[packets_[ev.pid].flow];
      const DomainSpec* origin = scenario_.DomainOfHost(flow.src_host);
      if (origin && origin->as.id == domain && !flow.install_tick) {
        flow.install_tick = done;
      }
    } else if (result->drop == DropReason::kDefense && !result->batch.mods.empty()) {
      report_.blocks.emplace(ev.packet.src_ip.ToString(), start);
    }

    Event dec;
    dec.kind = Event::Kind::kDecision;
    dec.tick = done;
    dec.sw = ev.sw;
    dec.packet = ev.packet;
    dec.result = std::move(result);
    Push(std::move(dec));
  }

  void Decide(const Event& ev) {
    const std::string& domain = world_.DomainOfSwitch(ev.sw);
    if (!ev.result->allowed) {
      DropBuffered(ev.sw, FlowKey(ev.packet), ToString(*ev.result->drop), domain);
    }
    if (ev.result->batch.mods.empty() && !ev.result->allowed) return;
    Event inst = ev;
    inst.kind = Event::Kind::kInstall;
    inst.tick = ev.tick + scenario_.timing.control;
    Push(std::move(inst));
  }

  void Install(const Event& ev) {
    bool full = false;
    for (const auto& [sw, rule] : ev.result->batch.mods) {
      try {
        world_.switch_at(sw).Install(rule);
        ++report_.flow_mods;
      } catch (const TableFullError&) {
        full = true;
      }
    }
    if (!ev.result->allowed) return;
    const std::string& domain = world_.DomainOfSwitch(ev.sw);
    const std::string key = FlowKey(ev.packet);
    if (full) return DropBuffered(ev.sw, key, "TABLE_FULL", domain);
    auto slot = buffered_.find({ev.sw, key});
    std::optional<std::pair<Packet, int>> held = world_.switch_at(ev.sw).TakeBuffered(key);
    if (slot == buffered_.end() || !held) return;
    Event out;
    out.kind = Event::Kind::kArrive;
    out.tick = ev.tick;
    out.sw = ev.sw;
    out.port = held->second;
    out.packet = std::move(held->first);
    out.pid = slot->second;
    out.reinjected = true;
    buffered_.erase(slot);
    Push(std::move(out));
  }

  void DropBuffered(const std::string& sw, const std::string& key,
                    const std::string& reason, const std::string& domain) {
    world_.switch_at(sw).TakeBuffered(key);
    auto slot = buffered_.find({sw, key});
    if (slot == buffered_.end()) return;
    uint64_t pid = slot->second;
    buffered_.erase(slot);
    Drop(pid, reason, domain);
  }

  void Finish(uint64_t pid, const std::string& outcome, const std::string& domain) {
    PacketState& ps = packets_[pid];
    ps.done = true;
    if (ps.index != 0) return;
    FlowRecord& flow = report_.flows[ps.flow];
    flow.outcome = outcome;
    flow.drop_domain = outcome == "DELIVERED" ? "" : domain;
    flow.switch_path = ps.switches;
    flow.as_path = ps.domains;
  }

  void Drop(uint64_t pid, const std::string& reason, const std::string& domain) {
    if (packets_[pid].done) return;
    ++report_.drops[reason];
    Finish(pid, reason, domain);
  }

  void Deliver(uint64_t pid, int64_t tick, const std::string& domain) {
    PacketState& ps = packets_[pid];
    if (ps.done) return;
    ++report_.delivered_packets;
    FlowRecord& flow = report_.flows[ps.flow];
    ++flow.delivered;
    if (ps.index == 0) {
      flow.established_ticks = tick - flow.start;
      auto h = delivered_handles.find({domain, flow.flow_key});
      if (h != delivered_handles.end()) flow.handle_visited = h->second;
    }
    Finish(pid, "DELIVERED", domain);
  }

  struct Queue {
    int64_t busy_until = 0;
    std::deque<int64_t> starts;
  };

  World& world_;
  const Scenario& scenario_;
  MetricsReport& report_;
  std::vector<FlowSpec> program_;
  std::vector<PacketState> packets_;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  uint64_t seq_ = 0;
  std::map<DomainFlow, uint64_t> buffered_;  // (switch, flow key) -> packet
  std::map<std::string, Queue> queues_;
};

MetricsReport EmptyReport(const Scenario& s) {
  MetricsReport r;
  r.scenario = s.name;
  r.mode = s.proactive ? "proactive" : "reactive";
  r.seed = s.seed;
  r.pbsa = s.pbsa;
  return r;
}

}  // namespace

SimulationResult Simulate(const Scenario& scenario) {
  SimulationResult out;
  out.report = EmptyReport(scenario);
  if (!scenario.proactive) {
    out.world = std::make_unique<World>(scenario);
    Simulator sim(*out.world, out.report);
    sim.Run();
    return out;
  }
  World plan_world(scenario);
  MetricsReport plan_report = EmptyReport(scenario);
  Simulator plan(plan_world, plan_report);
  plan.Run();

  out.world = std::make_unique<World>(scenario);
  for (const auto& [id, sw] : plan_world.switches()) {
    for (FlowRule rule : sw.FlowDump()) {
      if (rule.provenance == "discovery") continue;
      rule.packets = 0;
      rule.bytes = 0;
      out.world->switch_at(id).Install(std::move(rule));
    }
  }
  Simulator sim(*out.world, out.report);
  sim.augmentations = plan.augmentations;
  sim.delivered_handles = plan.delivered_handles;
  sim.Run();
  return out;
}

MetricsReport Run(const Scenario& scenario) {
  return Simulate(scenario).report;
}

}  // namespace pbsa
