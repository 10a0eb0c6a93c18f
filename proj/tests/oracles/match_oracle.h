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

// Test-only reference matcher. Each template field is judged by its own
// predicate, built from text renderings and bit strings rather than the
// library's matcher helpers, and the verdict is their conjunction.

#pragma once

#include <algorithm>
#include <array>
#include <bitset>
#include <cctype>
#include <set>
#include <string>

#include "pbsa/policy/expression.h"

namespace pbsa::oracle {

enum Field {
  kFlowId,
  kSourceAs,
  kDestAs,
  kSourceIp,
  kDestIp,
  kSourceMac,
  kDestMac,
  kUser,
  kFlowCons,
  kDomCons,
  kServices,
  kSecProfile,
  kPath,
  kValidity,
  kFieldCount
};

inline std::string Upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

inline bool InSubnet(const Cidr& net, Ipv4Address ip) {
  std::string a = std::bitset<32>(net.network().value()).to_string();
  std::string b = std::bitset<32>(ip.value()).to_string();
  size_t n = static_cast<size_t>(net.prefix_len());
  return a.compare(0, n, b, 0, n) == 0;
}

inline bool LabelOk(const LabelConstraint& c, int rank) {
  std::string t = c.ToString();
  if (t == "*") return true;
  size_t digits_end = 2;
  while (digits_end < t.size() && std::isdigit(static_cast<unsigned char>(t[digits_end]))) {
    ++digits_end;
  }
  int base = std::stoi(t.substr(2, digits_end - 2));
  std::string rel = t.substr(digits_end);
  if (rel == "+=") return rank >= base;
  if (rel == "-=") return rank <= base;
  return rank == base;
}

inline bool AsOk(const EndpointSelector& s, const std::optional<AsInfo>& as,
                 Ipv4Address host, const std::optional<std::string>& ingress,
                 bool source) {
  bool need_as = s.as_id || s.as_type || !s.label_req.is_any();
  if (need_as && !as) return false;
  if (s.as_id && *s.as_id != as->id) return false;
  if (s.as_type && *s.as_type != as->type) return false;
  if (!LabelOk(s.label_req, as ? as->label.rank() : 1)) return false;
  if (s.subnet && !InSubnet(*s.subnet, host)) return false;
  if (source && s.gateway && (!ingress || *ingress != *s.gateway)) return false;
  return true;
}

inline bool ConsOk(const std::vector<Constraint>& cons, const FlowContext& ctx) {
  for (const Constraint& c : cons) {
    std::string t = c.ToString();
    if (t.rfind("pkt:type=", 0) == 0 &&
        Upper(t.substr(9)) != Upper(ctx.packet_type)) {
      return false;
    }
    if (t.rfind("pkt:proto=", 0) == 0 &&
        Upper(t.substr(10)) != Upper(ctx.ip_proto)) {
      return false;
    }
    if (t.rfind("pkt:port=", 0) == 0 &&
        t.substr(9) != std::to_string(ctx.service_port)) {
      return false;
    }
    if (t.rfind("sig:", 0) == 0 && ctx.signature.value_or("") != t.substr(4)) {
      return false;
    }
  }
  return true;
}

inline std::array<bool, kFieldCount> FieldVerdicts(const PolicyExpression& pe,
                                                   const FlowContext& ctx) {
  std::array<bool, kFieldCount> v{};
  v[kFlowId] = !pe.flow_id || *pe.flow_id == ctx.flow_id;
  v[kSourceAs] = AsOk(pe.source, ctx.src_as, ctx.src_ip, ctx.ingress_gateway, true);
  v[kDestAs] = AsOk(pe.dest, ctx.dst_as, ctx.dst_ip, std::nullopt, false);
  v[kSourceIp] = !pe.source.host_ip || pe.source.host_ip->ToString() == ctx.src_ip.ToString();
  v[kDestIp] = !pe.dest.host_ip || pe.dest.host_ip->ToString() == ctx.dst_ip.ToString();
  v[kSourceMac] = !pe.source.host_mac || pe.source.host_mac->ToString() == ctx.src_mac.ToString();
  v[kDestMac] = !pe.dest.host_mac || pe.dest.host_mac->ToString() == ctx.dst_mac.ToString();
  v[kUser] = !pe.user || (ctx.user && *ctx.user == *pe.user);
  v[kFlowCons] = ConsOk(pe.flow_cons, ctx);
  v[kDomCons] = ConsOk(pe.dom_cons, ctx);
  if (pe.services) {
    std::set<int> ports;
    for (const PortRange& r : pe.services->ranges) {
      for (int p = r.lo; p <= r.hi; ++p) ports.insert(p);
    }
    v[kServices] = ports.count(ctx.service_port) > 0;
  } else {
    v[kServices] = true;
  }
  v[kSecProfile] = true;  // tag only
  if (pe.path && pe.path->kind == PathKind::kAs) {
    std::string want, have;
    for (const auto& h : pe.path->hops) want += h + "|";
    for (const auto& h : ctx.traversed_path) have += h + "|";
    v[kPath] = want == have;
  } else {
    v[kPath] = true;
  }
  v[kValidity] = !pe.validity || (pe.validity->start <= ctx.timestamp &&
                                  ctx.timestamp < pe.validity->end);
  return v;
}

inline bool Match(const PolicyExpression& pe, const FlowContext& ctx) {
  auto v = FieldVerdicts(pe, ctx);
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

}  // namespace pbsa::oracle
