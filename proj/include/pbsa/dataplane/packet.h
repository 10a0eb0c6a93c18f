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

#include "pbsa/interdomain/token.h"
#include "pbsa/net/address.h"

namespace pbsa {

struct Packet {
  Ipv4Address src_ip;
  Ipv4Address dst_ip;
  MacAddress src_mac;
  MacAddress dst_mac;
  std::string ip_proto = "TCP";
  uint16_t src_port = 0;
  uint16_t dst_port = 0;
  std::string packet_type;  // ARP, HTTP, FTP, SYN, ...
  std::optional<std::string> signature;  // set by an upstream detector
  uint32_t size = 64;
  int64_t timestamp = 0;
  // Present only on copies crossing a domain boundary.
  std::optional<Handle> handle;
  std::optional<PolicyTransferToken> ptt;

  bool is_arp() const { return packet_type == "ARP"; }

  friend bool operator==(const Packet&, const Packet&) = default;
};

// "<proto> <src>:<sport>><dst>:<dport>", the identity a Handle is bound to.
std::string FlowKey(const Packet& p);

}  // namespace pbsa
