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


#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pbsa/controller/controller.h"
#include "pbsa/harness/generators.h"
#include "pbsa/interdomain/exchange.h"
#include "support/scenarios.h"

namespace pbsa {
namespace {

using testing::Bundled;
using testing::DropPolicy;
using testing::FromHost;
using testing::PacketFrom;

std::vector<std::string> Switches(const FlowModBatch& b) {
  std::vector<std::string> out;
  for (const auto& [sw, rule] : b.mods) out.push_back(sw);
  return out;
}

struct Hop {
  std::string as;
  bool allowed = false;
  std::string reason;
  PacketInResult result;
};

// Drives one flow from the source domain to its destination through the
// controllers of `world`, the way the gateways would hand it over.
std::vector<Hop> Walk(World& world, const std::string& src_host, const Packet& p) {
  std::vector<Hop> hops;
  const std::string src_as = world.scenario().DomainOfHost(src_host)->as.id;
  PacketInResult r = world.controller(src_as).HandlePacketIn(FromHost(world, src_host, p));
  hops.push_back({src_as, r.allowed, r.drop ? ToString(*r.drop) : "", r});
  std::string cur = src_as;
  while (r.allowed && r.next_as) {
    std::string next = *r.next_as;
    AugmentedPacket aug{p, *r.handle, r.ptt};
    InterdomainOutcome o =
        ForwardInterdomain(world.controller(next), aug, GatewayName(next, cur), 0);
    r = o.result;
    hops.push_back({next, r.allowed, r.drop ? ToString(*r.drop) : "", r});
    cur = next;
  }
  return hops;
}

TEST(ControllerTest, FtpBatchFollowsPinnedPath) {
  World world(Bundled("fig5_intra"));
  const Scenario& s = world.scenario();
  Packet p = PacketFrom(s, "h2", "172.56.16.8", 40001, 21, "FTP");
  PacketInResult r = world.controller("AS1").HandlePacketIn(FromHost(world, "h2", p));
  ASSERT_TRUE(r.allowed) << r.detail;
  EXPECT_EQ(r.path, (SwitchPath{"SW1", "SW3", "SW4"}));
  EXPECT_EQ(Switches(r.batch),
            (std::vector<std::string>{"SW1", "SW1", "SW3", "SW3", "SW4", "SW4"}));
  EXPECT_EQ(r.batch.provenance, "PE4");
  EXPECT_TRUE(r.deliver_local);
  EXPECT_FALSE(r.handle.has_value());
  for (size_t i = 0; i < r.batch.mods.size(); ++i) {
    const FlowRule& rule = r.batch.mods[i].second;
    EXPECT_EQ(rule.priority, kFlowPriority);
    EXPECT_EQ(rule.provenance, "PE4");
    ASSERT_TRUE(rule.tags.has_value());
    EXPECT_EQ(rule.tags->ToString(), "conf");
    // Return rule first on each switch.
    bool forward = i % 2 == 1;
    EXPECT_EQ(rule.match.src_ip, forward ? p.src_ip : p.dst_ip);
  }
  // Forward rule on the last switch points at the server's port.
  const FlowRule& last = r.batch.mods.back().second;
  EXPECT_EQ(last.action, FlowAction::Output(world.switch_at("SW4").PortTo("ftp")));
  // Return rule on the first switch points back at the client.
  const FlowRule& first = r.batch.mods.front().second;
  EXPECT_EQ(first.action, FlowAction::Output(world.switch_at("SW1").PortTo("h2")));
}

TEST(ControllerTest, BatchHasTwoRulesPerSwitch) {
  for (int k = 1; k <= 6; ++k) {
    nlohmann::json doc = {{"generator", {{"kind", "chain"}, {"switch_count", k}}}};
    World world(ParseScenario(doc));
    Packet p = PacketFrom(world.scenario(), "src", "10.1.0.20", 40000, 80, "HTTP");
    PacketInResult r = world.controller("AS1").HandlePacketIn(FromHost(world, "src", p));
    ASSERT_TRUE(r.allowed) << "k=" << k << " " << r.detail;
    EXPECT_EQ(r.path.size(), static_cast<size_t>(k));
    EXPECT_EQ(r.batch.mods.size(), static_cast<size_t>(2 * k)) << "k=" << k;
  }
}

TEST(ControllerTest, EmptyRepositoryDeniesEverything) {
  Scenario s = Bundled("fig5_intra");
  s.domains[0].policies.clear();
  World world(s);
  Controller& c = world.controller("AS1");
  Packet p = PacketFrom(s, "h4", "172.56.16.6", 40000, 80, "HTTP");
  PacketInResult r = c.HandlePacketIn(FromHost(world, "h4", p));
  EXPECT_FALSE(r.allowed);
  ASSERT_TRUE(r.drop.has_value());
  EXPECT_EQ(*r.drop, DropReason::kPolicy);
  EXPECT_EQ(r.detail, "default deny");
  EXPECT_TRUE(r.batch.mods.empty());
  ASSERT_EQ(c.events().size(), 1u);
  EXPECT_EQ(c.events()[0].matched_pe, "-");
  EXPECT_EQ(c.events()[0].reason, "POLICY");
  EXPECT_EQ(c.events()[0].rules, 0u);
}

TEST(ControllerTest, DeniedRequestsNeverProduceFlowMods) {
  World world(Bundled("fig5_intra"));
  const Scenario& s = world.scenario();
  Controller& c = world.controller("AS1");
  std::mt19937_64 rng(42);
  const std::vector<std::string> srcs = {"h2", "h4", "web", "ftp"};
  const std::vector<std::string> dsts = {"172.56.16.2", "172.56.16.4", "172.56.16.6",
                                         "172.56.16.8", "172.56.16.99"};
  const std::vector<uint16_t> ports = {20, 21, 22, 23, 80, 443, 8080};
  size_t allowed = 0;
  for (int i = 0; i < 2000; ++i) {
    const std::string& src = srcs[rng() % srcs.size()];
    const std::string& dst = dsts[rng() % dsts.size()];
    if (s.FindHost(src)->ip.ToString() == dst) continue;
    Packet p = PacketFrom(s, src, dst, static_cast<uint16_t>(1024 + rng() % 60000),
                          ports[rng() % ports.size()], "TCP");
    PacketInResult r = c.HandlePacketIn(FromHost(world, src, p, i));
    if (r.allowed) {
      ++allowed;
      EXPECT_FALSE(r.batch.mods.empty());
    } else {
      EXPECT_TRUE(r.batch.mods.empty()) << FlowKey(p);
    }
  }
  EXPECT_GT(allowed, 0u);
  EXPECT_LT(allowed, 2000u);
}

TEST(ControllerTest, DuplicatePolicyIdsRejected) {
  Scenario s = Bundled("fig5_intra");
  World world(s);
  ControllerConfig cfg = world.controller("AS1").config();
  cfg.policies.push_back(cfg.policies.front());
  EXPECT_THROW(Controller{cfg}, std::invalid_argument);
}

TEST(ControllerTest, MissingOwnKeyRejected) {
  World world(Bundled("fig5_intra"));
  ControllerConfig cfg = world.controller("AS1").config();
  cfg.keys.erase("AS1");
  EXPECT_THROW(Controller{cfg}, std::invalid_argument);
}

TEST(ControllerTest, Fig3HandleGrowsAcrossDomains) {
  World world(Bundled("fig3_interdomain"));
  Packet p = PacketFrom(world.scenario(), "X", "192.168.52.72", 40000, 80, "HTTP");
  std::vector<Hop> hops = Walk(world, "X", p);
  ASSERT_EQ(hops.size(), 4u);
  std::vector<std::string> expect;
  for (size_t i = 0; i < hops.size(); ++i) {
    SCOPED_TRACE(hops[i].as);
    ASSERT_TRUE(hops[i].allowed) << hops[i].result.detail;
    expect.push_back("AS" + std::to_string(i + 1));
    EXPECT_EQ(hops[i].as, expect.back());
    ASSERT_TRUE(hops[i].result.handle.has_value());
    EXPECT_EQ(hops[i].result.handle->visited, expect);
    EXPECT_EQ(hops[i].result.handle->origin_as, "AS1");
  }
  EXPECT_TRUE(hops.back().result.deliver_local);
  EXPECT_EQ(hops[0].result.batch.provenance, "PE1");
  EXPECT_EQ(hops[1].result.batch.provenance, "PE4");
  EXPECT_EQ(hops[2].result.batch.provenance, "PE2");
  EXPECT_EQ(hops[3].result.batch.provenance, "PE2");
  // The exit obligation of PE1 pins AS1's egress gateway.
  EXPECT_EQ(hops[0].result.path.back(), "1SW2");
}

TEST(ControllerTest, Fig3TokenCarriesOriginConstraint) {
  World world(Bundled("fig3_interdomain"));
  Packet p = PacketFrom(world.scenario(), "X", "192.168.52.72", 40000, 80, "HTTP");
  std::vector<Hop> hops = Walk(world, "X", p);
  ASSERT_EQ(hops.size(), 4u);
  for (size_t i = 0; i + 1 < hops.size(); ++i) {
    SCOPED_TRACE(hops[i].as);
    const auto& ptt = hops[i].result.ptt;
    ASSERT_TRUE(ptt.has_value());
    EXPECT_EQ(ptt->origin_as, "AS1");
    EXPECT_EQ(ptt->issuer_as, hops[i].as);
    EXPECT_EQ(ptt->flow_id, FlowKey(p));
    ASSERT_EQ(ptt->constraints.size(), 1u);
    EXPECT_EQ(ptt->constraints[0].ToString(), "SL2+=");
    EXPECT_TRUE(VerifyTokenTag(*ptt, world.controller(hops[i + 1].as).config().keys));
  }
  EXPECT_FALSE(hops.back().result.ptt.has_value());
}

TEST(ControllerTest, Fig3RemovingAnyPolicyDropsAtThatDomain) {
  const std::vector<std::pair<std::string, std::string>> pes = {
      {"AS1", "PE1"}, {"AS2", "PE4"}, {"AS3", "PE2"}, {"AS4", "PE2"}};
  for (const auto& [as, pe] : pes) {
    SCOPED_TRACE(as);
    Scenario s = Bundled("fig3_interdomain");
    DropPolicy(s, as, pe);
    World world(s);
    Packet p = PacketFrom(s, "X", "192.168.52.72", 40000, 80, "HTTP");
    std::vector<Hop> hops = Walk(world, "X", p);
    ASSERT_FALSE(hops.empty());
    EXPECT_EQ(hops.back().as, as);
    EXPECT_FALSE(hops.back().allowed);
    EXPECT_EQ(hops.back().reason, "POLICY");
    EXPECT_TRUE(hops.back().result.batch.mods.empty());
  }
}

TEST(ControllerTest, AliceNeedsPe8AtTheEdge) {
  for (bool with_pe8 : {true, false}) {
    SCOPED_TRACE(with_pe8 ? "with PE8" : "without PE8");
    Scenario s = Bundled("alice_byod");
    if (!with_pe8) DropPolicy(s, "AS2", "PE8");
    World world(s);
    Packet p = PacketFrom(s, "alice-phone", "172.16.10.66", 51000, 80, "HTTP");
    std::vector<Hop> hops = Walk(world, "alice-phone", p);
    ASSERT_EQ(hops.size(), 2u);
    EXPECT_TRUE(hops[0].allowed);
    EXPECT_EQ(hops[1].as, "AS2");
    EXPECT_EQ(hops[1].allowed, with_pe8);
    if (with_pe8) {
      EXPECT_TRUE(hops[1].result.deliver_local);
      EXPECT_EQ(hops[1].result.batch.provenance, "PE8");
    } else {
      EXPECT_EQ(hops[1].reason, "POLICY");
      EXPECT_TRUE(hops[1].result.batch.mods.empty());
    }
  }
}

TEST(ControllerTest, HandleCreateAndExtend) {
  World world(Bundled("fig3_interdomain"));
  Handle h = world.controller("AS1").CreateHandle("flow-1");
  EXPECT_EQ(h.visited, std::vector<std::string>{"AS1"});
  EXPECT_EQ(h.origin_as, "AS1");
  EXPECT_TRUE(ValidateHandle(h, "AS2", world.controller("AS2").config().keys,
                             world.controller("AS2").config().topo));

  Handle h2 = world.controller("AS2").ExtendHandle(h);
  EXPECT_EQ(h2.visited, (std::vector<std::string>{"AS1", "AS2"}));
  EXPECT_EQ(h2.origin_as, "AS1");
  EXPECT_TRUE(ValidateHandle(h2, "AS3", world.controller("AS3").config().keys,
                             world.controller("AS3").config().topo));

  // AS4 does not border AS1, and a forged tag is caught anywhere.
  EXPECT_THROW(world.controller("AS4").ExtendHandle(h), IntegrityError);
  Handle forged = h;
  forged.tag[0] = forged.tag[0] == '0' ? '1' : '0';
  EXPECT_THROW(world.controller("AS2").ExtendHandle(forged), IntegrityError);
  Handle rewritten = h2;
  rewritten.visited = {"AS2"};
  EXPECT_THROW(world.controller("AS3").ExtendHandle(rewritten), IntegrityError);
}

TEST(ControllerTest, CreatePttMergesAndReissues) {
  World world(Bundled("fig3_interdomain"));
  Controller& as1 = world.controller("AS1");
  Controller& as2 = world.controller("AS2");
  Decision none;
  none.verdict = Verdict::kAllow;
  EXPECT_FALSE(as1.CreatePtt("f", none, std::nullopt).has_value());

  Decision d = none;
  d.ptt_constraints = {ParseConstraint("SL2+=")};
  auto t1 = as1.CreatePtt("f", d, std::nullopt);
  ASSERT_TRUE(t1.has_value());
  EXPECT_EQ(t1->issuer_as, "AS1");
  EXPECT_EQ(t1->origin_as, "AS1");

  Decision d2 = none;
  d2.ptt_constraints = {ParseConstraint("SL3+="), ParseConstraint("rate<=5")};
  auto t2 = as2.CreatePtt("f", d2, t1);
  ASSERT_TRUE(t2.has_value());
  EXPECT_EQ(t2->issuer_as, "AS2");
  EXPECT_EQ(t2->origin_as, "AS1");
  std::set<std::string> got;
  for (const Constraint& c : t2->constraints) got.insert(c.ToString());
  EXPECT_EQ(got, (std::set<std::string>{"SL3+=", "rate<=5"}));
  EXPECT_TRUE(VerifyTokenTag(*t2, world.controller("AS3").config().keys));
}

TEST(ControllerTest, TamperedHandleRejectedAtIngress) {
  World world(Bundled("fig3_interdomain"));
  Packet p = PacketFrom(world.scenario(), "X", "192.168.52.72", 40000, 80, "HTTP");
  PacketInResult r = world.controller("AS1").HandlePacketIn(FromHost(world, "X", p));
  ASSERT_TRUE(r.allowed && r.handle);

  AugmentedPacket aug{p, *r.handle, r.ptt};
  aug.handle.visited = {"AS3"};
  InterdomainOutcome o = ForwardInterdomain(world.controller("AS2"), aug, "2SW1", 0);
  EXPECT_EQ(o.kind, InterdomainOutcome::Kind::kDrop);
  ASSERT_TRUE(o.result.drop.has_value());
  EXPECT_EQ(*o.result.drop, DropReason::kHandleInvalid);

  // A handle for another flow does not cover this packet.
  AugmentedPacket other{p, *r.handle, r.ptt};
  other.packet.src_port = 40001;
  o = ForwardInterdomain(world.controller("AS2"), other, "2SW1", 0);
  ASSERT_TRUE(o.result.drop.has_value());
  EXPECT_EQ(*o.result.drop, DropReason::kHandleInvalid);
}

TEST(ControllerTest, ForgedTokenIgnored) {
  World world(Bundled("fig3_interdomain"));
  Packet p = PacketFrom(world.scenario(), "X", "192.168.52.72", 40000, 80, "HTTP");
  PacketInResult r = world.controller("AS1").HandlePacketIn(FromHost(world, "X", p));
  ASSERT_TRUE(r.allowed && r.ptt);
  AugmentedPacket aug{p, *r.handle, r.ptt};
  aug.ptt->constraints = {ParseConstraint("SL1")};
  InterdomainOutcome o = ForwardInterdomain(world.controller("AS2"), aug, "2SW1", 0);
  EXPECT_EQ(o.kind, InterdomainOutcome::Kind::kNextHop);
  const auto& events = world.controller("AS2").events();
  ASSERT_FALSE(events.empty());
  EXPECT_EQ(events.back().security_events, std::vector<std::string>{"ptt rejected"});
  // AS2 delegates nothing of its own, so nothing is re-issued.
  EXPECT_FALSE(o.result.ptt.has_value());
}

TEST(ControllerTest, BaselineAllowsWithoutPolicies) {
  Scenario s = Bundled("fig5_intra");
  s.pbsa = false;
  s.domains[0].policies.clear();
  World world(s);
  Packet p = PacketFrom(s, "h4", "172.56.16.6", 40000, 80, "HTTP");
  PacketInResult r = world.controller("AS1").HandlePacketIn(FromHost(world, "h4", p));
  ASSERT_TRUE(r.allowed);
  EXPECT_EQ(r.batch.provenance, "baseline");
  EXPECT_EQ(r.path.size(), 3u);
  EXPECT_FALSE(r.handle.has_value());
}

TEST(ControllerTest, DropRuleBlocksOffender) {
  World world(Bundled("a4_switch_flood"));
  const Scenario& s = world.scenario();
  Controller& c = world.controller("AS1");
  std::optional<PacketInResult> blocked;
  int admitted = 0;
  for (int i = 0; i < 40 && !blocked; ++i) {
    Packet p = PacketFrom(s, "attacker", "10.0.0.80", static_cast<uint16_t>(2000 + i), 80, "SYN");
    PacketInResult r = c.HandlePacketIn(FromHost(world, "attacker", p, i));
    if (r.allowed) {
      ++admitted;
    } else {
      blocked = r;
    }
  }
  ASSERT_TRUE(blocked.has_value());
  EXPECT_EQ(admitted, 20);
  EXPECT_EQ(*blocked->drop, DropReason::kDefense);
  ASSERT_EQ(blocked->batch.mods.size(), 1u);
  EXPECT_EQ(blocked->batch.mods[0].first, "edge1");
  const FlowRule& rule = blocked->batch.mods[0].second;
  EXPECT_EQ(rule.priority, kBlockPriority);
  EXPECT_EQ(rule.provenance, "defense");
  EXPECT_EQ(rule.action, FlowAction::Drop());
  EXPECT_EQ(rule.match.src_ip, s.FindHost("attacker")->ip);
  EXPECT_FALSE(c.events().back().defense.empty());

  // A co-resident host is untouched.
  Packet legit = PacketFrom(s, "user1", "10.0.0.80", 3000, 80, "HTTP");
  EXPECT_TRUE(c.HandlePacketIn(FromHost(world, "user1", legit, 50)).allowed);
}

TEST(ControllerTest, RateConstraintCapsSetupsPerWindow) {
  World world(Bundled("a5_chained_flows"));
  const Scenario& s = world.scenario();
  Packet p = PacketFrom(s, "bot2", "192.0.2.80", 1000, 80, "HTTP");
  int allowed = 0;
  for (int i = 0; i < 10; ++i) {
    p.src_port = static_cast<uint16_t>(1000 + i);
    std::vector<Hop> hops = Walk(world, "bot2", p);
    if (hops.back().allowed) ++allowed;
  }
  EXPECT_EQ(allowed, 6);
}

}  // namespace
}  // namespace pbsa
