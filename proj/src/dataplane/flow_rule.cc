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

#include "pbsa/dataplane/flow_rule.h"

#include "pbsa/policy/text_util.h"

namespace pbsa {

std::string FlowKey(const Packet& p) {
  if (p.is_arp()) {
    return "ARP " + p.src_ip.ToString() + ">" + p.dst_ip.ToString();
  }
  return p.ip_proto + " " + p.src_ip.ToString() + ":" +
         std::to_string(p.src_port) + ">" + p.dst_ip.ToString() + ":" +
         std::to_string(p.dst_port);
}

bool FlowMatch::Matches(const Packet& p, int port) const {
  if (packet_type) {
    if (*packet_type != p.packet_type) return false;
  } else if (p.is_arp()) {
    return false;
  }
  if (in_port && *in_port != port) return false;
  if (ip_proto && *ip_proto != p.ip_proto) return false;
  if (src_ip && *src_ip != p.src_ip) return false;
  if (dst_ip && *dst_ip != p.dst_ip) return false;
  if (src_port && *src_port != p.src_port) return false;
  if (dst_port && *dst_port != p.dst_port) return false;
  return true;
}

std::string FlowMatch::ToString() const {
  std::string s;
  if (packet_type) {
    s = text::Lower(*packet_type);
  } else if (ip_proto) {
    s = text::Lower(*ip_proto);
  } else {
    s = "ip";
  }
  if (in_port) s += ",in_port=" + std::to_string(*in_port);
  if (packet_type && ip_proto) s += ",proto=" + text::Lower(*ip_proto);
  if (src_ip) s += ",nw_src=" + src_ip->ToString();
  if (dst_ip) s += ",nw_dst=" + dst_ip->ToString();
  if (src_port) s += ",tp_src=" + std::to_string(*src_port);
  if (dst_port) s += ",tp_dst=" + std::to_string(*dst_port);
  return s;
}

std::string FlowAction::ToString() const {
  switch (kind) {
    case Kind::kOutput:
      return "output:" + std::to_string(port);
    case Kind::kController:
      return "CONTROLLER";
    case Kind::kDrop:
      break;
  }
  return "drop";
}

std::string FlowRule::ToString() const {
  std::string s = "priority=" + std::to_string(priority) + "," +
                  match.ToString() + " actions=" + action.ToString();
  if (tags && (tags->conf || tags->intg)) s += " tags=" + tags->ToString();
  return s;
}

FlowRule DiscoveryRule() {
  FlowRule r;
  r.match.packet_type = "ARP";
  r.action = FlowAction::Controller();
  r.priority = kDiscoveryPriority;
  r.provenance = "discovery";
  return r;
}

}  // namespace pbsa
