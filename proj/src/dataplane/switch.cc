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

#include "pbsa/dataplane/switch.h"

#include <algorithm>
#include <numeric>

namespace pbsa {

Switch::Switch(std::string id, SecurityLabel label, size_t capacity)
    : id_(std::move(id)), label_(label), capacity_(capacity) {}

int Switch::AddPort(PortPeer peer) {
  int port = static_cast<int>(ports_.size()) + 1;
  ports_.emplace(port, std::move(peer));
  return port;
}

int Switch::PortTo(const std::string& peer_id) const {
  for (const auto& [port, peer] : ports_) {
    if (peer.id == peer_id) return port;
  }
  return 0;
}

void Switch::SetPortUp(int port, bool up) { ports_.at(port).up = up; }

const FlowRule* Switch::Lookup(const Packet& p, int in_port) const {
  // table_ is kept sorted, so the first hit has maximal priority.
  for (const FlowRule& r : table_) {
    if (r.match.Matches(p, in_port)) return &r;
  }
  return nullptr;
}

ForwardOutcome Switch::ProcessPacket(const Packet& packet, int in_port) {
  if (in_port != 0 && !ports_.count(in_port)) {
    throw std::invalid_argument(id_ + ": packet on unknown port " +
                                std::to_string(in_port));
  }
  ++counters_.offered;
  const FlowRule* hit = Lookup(packet, in_port);
  if (!hit) {
    ++counters_.misses;
    auto [it, fresh] = buffer_.insert_or_assign(FlowKey(packet),
                                                std::make_pair(packet, in_port));
    if (!fresh) ++counters_.buffer_replaced;
    return {ForwardOutcome::Kind::kPacketIn, 0, ""};
  }
  FlowRule& rule = table_[static_cast<size_t>(hit - table_.data())];
  ++rule.packets;
  rule.bytes += packet.size;
  switch (rule.action.kind) {
    case FlowAction::Kind::kDrop:
      return {ForwardOutcome::Kind::kDrop, 0, rule.provenance};
    case FlowAction::Kind::kController:
      return {ForwardOutcome::Kind::kPacketIn, 0, rule.provenance};
    case FlowAction::Kind::kOutput:
      break;
  }
  auto port = ports_.find(rule.action.port);
  if (port == ports_.end() || !port->second.up) {
    ++counters_.link_down;
    return {ForwardOutcome::Kind::kLinkDown, rule.action.port, rule.provenance};
  }
  return {ForwardOutcome::Kind::kForward, rule.action.port, rule.provenance};
}

InstallResult Switch::Install(FlowRule rule) {
  rule.packets = 0;
  rule.bytes = 0;
  uint64_t seq = next_seq_++;
  auto same = std::find_if(table_.begin(), table_.end(), [&](const FlowRule& r) {
    return r.match == rule.match;
  });
  InstallResult result = InstallResult::kAdded;
  if (same != table_.end()) {
    if (same->priority > rule.priority ||
        (same->priority == rule.priority && same->action == rule.action &&
         same->tags == rule.tags && same->provenance == rule.provenance)) {
      return InstallResult::kUnchanged;
    }
    size_t i = static_cast<size_t>(same - table_.begin());
    seq = seq_[i];
    counters_.retired_rule_packets += same->packets;
    table_.erase(same);
    seq_.erase(seq_.begin() + static_cast<long>(i));
    result = InstallResult::kReplaced;
  } else if (table_.size() >= capacity_) {
    throw TableFullError(id_ + ": flow table full (" +
                         std::to_string(capacity_) + " entries)");
  }
  size_t pos = 0;
  while (pos < table_.size() &&
         (table_[pos].priority > rule.priority ||
          (table_[pos].priority == rule.priority && seq_[pos] < seq))) {
    ++pos;
  }
  table_.insert(table_.begin() + static_cast<long>(pos), std::move(rule));
  seq_.insert(seq_.begin() + static_cast<long>(pos), seq);
  return result;
}

size_t Switch::RemoveByProvenance(const std::string& provenance) {
  size_t removed = 0;
  for (size_t i = table_.size(); i-- > 0;) {
    if (table_[i].provenance == provenance) {
      counters_.retired_rule_packets += table_[i].packets;
      table_.erase(table_.begin() + static_cast<long>(i));
      seq_.erase(seq_.begin() + static_cast<long>(i));
      ++removed;
    }
  }
  return removed;
}

std::vector<std::pair<Packet, int>> Switch::ReleaseMatched() {
  std::vector<std::pair<Packet, int>> out;
  for (auto it = buffer_.begin(); it != buffer_.end();) {
    if (Lookup(it->second.first, it->second.second)) {
      out.push_back(std::move(it->second));
      it = buffer_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

std::optional<std::pair<Packet, int>> Switch::TakeBuffered(
    const std::string& flow_key) {
  auto it = buffer_.find(flow_key);
  if (it == buffer_.end()) return std::nullopt;
  auto out = std::move(it->second);
  buffer_.erase(it);
  return out;
}

std::string Switch::FlowDumpText() const {
  std::string s;
  for (const FlowRule& r : table_) s += r.ToString() + "\n";
  return s;
}

uint64_t Switch::RulePacketTotal() const {
  return std::accumulate(
      table_.begin(), table_.end(), counters_.retired_rule_packets,
      [](uint64_t acc, const FlowRule& r) { return acc + r.packets; });
}

}  // namespace pbsa
