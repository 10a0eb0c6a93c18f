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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pbsa/dataplane/flow_rule.h"
#include "pbsa/policy/label.h"

namespace pbsa {

class TableFullError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PortPeer {
  enum class Kind { kSwitch, kHost, kExternal };
  Kind kind = Kind::kSwitch;
  std::string id;     // switch, host, or remote gateway switch
  int peer_port = 0;  // port on the peer switch; 0 for hosts
  bool up = true;
};

struct ForwardOutcome {
  enum class Kind { kForward, kPacketIn, kDrop, kLinkDown };
  Kind kind = Kind::kPacketIn;
  int port = 0;
  std::string provenance;  // of the executed rule, if any
};

enum class InstallResult { kAdded, kReplaced, kUnchanged };

class Switch {
 public:
  static constexpr size_t kDefaultCapacity = 1024;

  Switch(std::string id, SecurityLabel label,
         size_t capacity = kDefaultCapacity);

  const std::string& id() const { return id_; }
  SecurityLabel label() const { return label_; }

  // Ports are numbered from 1 in the order they are added.
  int AddPort(PortPeer peer);
  const std::map<int, PortPeer>& ports() const { return ports_; }
  // Port facing `peer_id`, or 0.
  int PortTo(const std::string& peer_id) const;
  void SetPortUp(int port, bool up);

  // Highest-priority matching rule executes; a miss buffers the packet
  // (one per flow key, newest wins) and asks for a packet_in. Throws
  // std::invalid_argument for an unknown in_port (0 is the controller).
  ForwardOutcome ProcessPacket(const Packet& packet, int in_port);

  // Throws TableFullError when a new match would exceed capacity.
  InstallResult Install(FlowRule rule);
  // Removes every rule with the given provenance; returns how many.
  size_t RemoveByProvenance(const std::string& provenance);

  // Buffered packets that now hit a rule, removed from the buffer in flow
  // key order.
  std::vector<std::pair<Packet, int>> ReleaseMatched();
  // Removes and returns the buffered packet for `flow_key`, if any.
  std::optional<std::pair<Packet, int>> TakeBuffered(const std::string& flow_key);

  // Priority descending, then insertion order.
  const std::vector<FlowRule>& FlowDump() const { return table_; }
  std::string FlowDumpText() const;

  struct Counters {
    uint64_t offered = 0;
    uint64_t misses = 0;
    uint64_t link_down = 0;
    uint64_t buffer_replaced = 0;
    uint64_t retired_rule_packets = 0;  // hits on rules since replaced
  };
  const Counters& counters() const { return counters_; }
  // Every rule hit so far; RulePacketTotal() + misses == offered.
  uint64_t RulePacketTotal() const;

 private:
  const FlowRule* Lookup(const Packet& p, int in_port) const;

  std::string id_;
  SecurityLabel label_;
  size_t capacity_;
  std::map<int, PortPeer> ports_;
  std::vector<FlowRule> table_;
  std::vector<uint64_t> seq_;  // parallel to table_
  uint64_t next_seq_ = 0;
  std::map<std::string, std::pair<Packet, int>> buffer_;
  Counters counters_;
};

}  // namespace pbsa
