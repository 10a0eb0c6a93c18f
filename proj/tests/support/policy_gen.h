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

// Random FlowContext / PolicyExpression generators for property tests.
// Values are drawn from small pools so that generated PEs match generated
// contexts often enough to exercise both outcomes.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "pbsa/policy/expression.h"

namespace pbsa::testing {

class PolicyGen {
 public:
  explicit PolicyGen(uint64_t seed) : rng_(seed) {}

  int Int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool Chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& Pick(const std::vector<T>& v) {
    return v[static_cast<size_t>(Int(0, static_cast<int>(v.size()) - 1))];
  }

  AsInfo As() {
    AsInfo as;
    int n = Int(1, 4);
    as.id = "AS" + std::to_string(n);
    as.subnet = Cidr(Ipv4Address(0x0a000000u | (uint32_t(n) << 16)), 16);
    as.type = Pick<std::string>({"EDU", "GOV", "COM"});
    as.label = SecurityLabel(Int(1, 4));
    return as;
  }

  Ipv4Address HostIn(const AsInfo& as) {
    return Ipv4Address(as.subnet->network().value() |
                       static_cast<uint32_t>(Int(1, 300)));
  }

  MacAddress Mac() {
    return MacAddress({0, 0, 0, 0, static_cast<uint8_t>(Int(0, 1)),
                       static_cast<uint8_t>(Int(1, 3))});
  }

  FlowContext Context() {
    FlowContext ctx;
    ctx.flow_id = "f" + std::to_string(Int(1, 3));
    ctx.src_as = As();
    ctx.dst_as = As();
    ctx.src_ip = HostIn(*ctx.src_as);
    ctx.dst_ip = HostIn(*ctx.dst_as);
    ctx.src_mac = Mac();
    ctx.dst_mac = Mac();
    if (Chance(0.7)) ctx.user = Pick<std::string>({"alice", "bob"});
    ctx.service_port = static_cast<uint16_t>(Pick<int>({22, 80, 443, 8080}));
    ctx.ip_proto = Pick<std::string>({"TCP", "UDP"});
    ctx.packet_type = Pick<std::string>({"HTTP", "FTP", "SYN"});
    if (Chance(0.3)) ctx.signature = "SYN_FLOOD";
    if (Chance(0.5)) ctx.ingress_gateway = "1SW" + std::to_string(Int(2, 3));
    ctx.timestamp = Int(0, 100);
    int hops = Int(0, 3);
    for (int i = 1; i <= hops; ++i) {
      ctx.traversed_path.push_back("AS" + std::to_string(i));
    }
    return ctx;
  }

  // A PE whose every field is, with the given probabilities, a wildcard, a
  // value satisfied by `ctx`, or an arbitrary value from the pool.
  PolicyExpression PeNear(const FlowContext& ctx, double p_wild,
                          double p_same) {
    auto mode = [&]() {
      double u = std::uniform_real_distribution<double>(0, 1)(rng_);
      return u < p_wild ? 0 : (u < p_wild + p_same ? 1 : 2);
    };
    PolicyExpression pe;
    pe.id = "pe" + std::to_string(Int(0, 999));
    pe.action = Chance(0.8) ? PolicyAction::kAllow : PolicyAction::kDeny;

    auto tok = [&](const std::optional<std::string>& same,
                   const std::vector<std::string>& pool)
        -> std::optional<std::string> {
      int m = mode();
      if (m == 0) return std::nullopt;
      if (m == 1 && same) return same;
      return Pick(pool);
    };

    pe.flow_id = tok(ctx.flow_id, {"f1", "f2", "f3"});
    FillSelector(pe.source, *ctx.src_as, ctx.src_ip, ctx.src_mac, mode);
    FillSelector(pe.dest, *ctx.dst_as, ctx.dst_ip, ctx.dst_mac, mode);
    pe.source.gateway = tok(ctx.ingress_gateway, {"1SW2", "1SW3"});
    pe.user = tok(ctx.user, {"alice", "bob"});

    switch (mode()) {
      case 0:
        break;
      case 1:
        pe.flow_cons.push_back(Constraint::PacketAttr("type", ctx.packet_type));
        break;
      default:
        pe.flow_cons.push_back(
            Constraint::PacketAttr("port", std::to_string(Pick<int>({22, 80}))));
    }
    if (Chance(0.3)) {
      LabelConstraint l = Label();
      if (!l.is_any()) pe.flow_cons.push_back(Constraint::LabelPath(l));
    }
    switch (mode()) {
      case 0:
        break;
      case 1:
        if (ctx.signature) {
          pe.dom_cons.push_back(Constraint::Signature(*ctx.signature));
        }
        break;
      default:
        pe.dom_cons.push_back(Constraint::Signature("PORT_SCAN"));
    }
    if (Chance(0.3)) pe.dom_cons.push_back(Constraint::RateThreshold(Int(1, 50)));

    switch (mode()) {
      case 0:
        break;
      case 1:
        pe.services = ServiceSet{{{ctx.service_port, ctx.service_port}}};
        break;
      default:
        pe.services = ServiceSet{{{80, 80}, {440, 450}}};
    }
    if (Chance(0.5)) pe.sec_profile = SecProfile{Chance(0.5), Chance(0.5)};
    switch (mode()) {
      case 0:
        break;
      case 1:
        if (!ctx.traversed_path.empty()) {
          pe.path = PolicyPath{PathKind::kAs, ctx.traversed_path};
        }
        break;
      default:
        pe.path = Chance(0.5) ? PolicyPath{PathKind::kAs, {"AS1", "AS2"}}
                              : PolicyPath{PathKind::kSwitch, {"SW1", "SW2"}};
    }
    switch (mode()) {
      case 0:
        break;
      case 1:
        pe.validity = TimeWindow{ctx.timestamp, ctx.timestamp + Int(1, 10)};
        break;
      default:
        pe.validity = TimeWindow{Int(0, 50), Int(50, 100)};
    }
    if (Chance(0.2)) pe.action_exit = "1SW2";
    return pe;
  }

  LabelConstraint Label() {
    switch (Int(0, 3)) {
      case 0:
        return LabelConstraint::Any();
      case 1:
        return LabelConstraint::AtLeast(Int(1, 4));
      case 2:
        return LabelConstraint::AtMost(Int(1, 4));
      default:
        return LabelConstraint::Exactly(Int(1, 4));
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  template <class ModeFn>
  void FillSelector(EndpointSelector& sel, const AsInfo& as, Ipv4Address ip,
                    MacAddress mac, ModeFn mode) {
    switch (mode()) {
      case 0:
        break;
      case 1:
        sel.as_id = as.id;
        break;
      default:
        sel.as_id = "AS" + std::to_string(Int(1, 4));
    }
    switch (mode()) {
      case 0:
        break;
      case 1:
        sel.subnet = Cidr(ip, Int(8, 32));
        break;
      default:
        sel.subnet = Cidr(Ipv4Address(0x0a000000u | (uint32_t(Int(1, 4)) << 16)),
                          Pick<int>({16, 24, 25}));
    }
    switch (mode()) {
      case 0:
        break;
      case 1:
        sel.as_type = as.type;
        break;
      default:
        sel.as_type = Pick<std::string>({"EDU", "GOV", "COM"});
    }
    switch (mode()) {
      case 0:
        break;
      case 1:
        sel.label_req = Chance(0.5) ? LabelConstraint::Exactly(as.label.rank())
                                    : LabelConstraint::AtMost(as.label.rank());
        break;
      default:
        sel.label_req = Label();
    }
    switch (mode()) {
      case 0:
        break;
      case 1:
        sel.host_ip = ip;
        break;
      default:
        sel.host_ip = Ipv4Address(0x0a010001u);
    }
    switch (mode()) {
      case 0:
        break;
      case 1:
        sel.host_mac = mac;
        break;
      default:
        sel.host_mac = Mac();
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace pbsa::testing
