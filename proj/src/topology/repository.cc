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

#include "pbsa/topology/repository.h"

#include <stdexcept>

namespace pbsa {

std::optional<SecurityLabel> TopologyRepository::LabelOf(
    const std::string& as_id) const {
  if (as_id == owner.id) return owner.label;
  auto it = entries.find(as_id);
  if (it == entries.end()) return std::nullopt;
  return it->second.label;
}

std::optional<std::string> TopologyRepository::AsForAddress(
    Ipv4Address ip) const {
  std::optional<std::string> best;
  int best_len = -1;
  auto consider = [&](const std::string& id, const Cidr& net) {
    if (net.Contains(ip) && net.prefix_len() > best_len) {
      best = id;
      best_len = net.prefix_len();
    }
  };
  consider(owner.id, owner.subnet);
  for (const auto& [id, e] : entries) consider(id, e.subnet);
  return best;
}

std::set<std::string> TopologyRepository::Neighbors(
    const std::string& as_id) const {
  std::set<std::string> out;
  for (const auto& [a, b] : links) {
    if (a == as_id) out.insert(b);
    if (b == as_id) out.insert(a);
  }
  return out;
}

std::vector<ProbeReply> SendProbes(const AsGraph& world,
                                   const std::string& owner, int max_ttl) {
  std::vector<ProbeReply> replies;
  for (int ttl = 1; ttl <= max_ttl; ++ttl) {
    // Probe copies in flight as (current AS, AS that forwarded it). Each hop
    // decrements TTL; the AS holding a copy when it reaches zero replies.
    std::set<std::pair<std::string, std::string>> inflight = {{owner, ""}};
    for (int hop = 0; hop < ttl; ++hop) {
      std::set<std::pair<std::string, std::string>> next;
      for (const auto& [at, via] : inflight) {
        for (const std::string& n : world.neighbors(at)) next.emplace(n, at);
      }
      inflight = std::move(next);
    }
    for (const auto& [at, via] : inflight) {
      if (at == owner) continue;
      const AsDescriptor& as = world.at(at);
      replies.push_back(ProbeReply{as.controller_id, as.id, as.subnet, as.type,
                                   as.label, ttl, via});
    }
  }
  return replies;
}

TopologyRepository ProbeTopology(const AsGraph& world,
                                 const std::string& owner, int max_ttl) {
  if (max_ttl < 1) throw std::invalid_argument("max_ttl must be >= 1");
  if (!world.Contains(owner)) {
    throw std::invalid_argument("unknown AS " + owner);
  }
  TopologyRepository repo;
  repo.owner = world.at(owner);

  // First hop toward each AS, from the smallest-TTL reply chain.
  std::map<std::string, std::string> first_hop;
  for (const ProbeReply& r : SendProbes(world, owner, max_ttl)) {
    repo.links.insert(std::minmax(r.as_id, r.via_as));
    if (repo.entries.count(r.as_id)) continue;
    std::string hop = r.via_as == owner ? r.as_id : first_hop.at(r.via_as);
    first_hop[r.as_id] = hop;
    repo.entries.emplace(
        r.as_id, TopologyEntry{r.as_id, r.label, r.ttl,
                               GatewayName(owner, hop), r.subnet, r.as_type});
  }
  return repo;
}

}  // namespace pbsa
