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

#include "pbsa/topology/graph.h"

#include <stdexcept>

namespace pbsa {
namespace {

const std::set<std::string> kNoNeighbors;

std::string_view AsSuffix(std::string_view id) {
  if (id.size() > 2 && id.substr(0, 2) == "AS") return id.substr(2);
  return id;
}

}  // namespace

std::string GatewayName(std::string_view from_as, std::string_view to_as) {
  return std::string(AsSuffix(from_as)) + "SW" + std::string(AsSuffix(to_as));
}

std::optional<std::pair<std::string, std::string>> ParseGatewayName(
    std::string_view name) {
  size_t sw = name.find("SW");
  if (sw == std::string_view::npos || sw == 0 || sw + 2 >= name.size()) {
    return std::nullopt;
  }
  return std::make_pair("AS" + std::string(name.substr(0, sw)),
                        "AS" + std::string(name.substr(sw + 2)));
}

void AsGraph::AddAs(AsDescriptor as) {
  std::string id = as.id;
  if (!ases_.emplace(id, std::move(as)).second) {
    throw std::invalid_argument("duplicate AS id " + id);
  }
  adj_[id];
}

void AsGraph::AddLink(const std::string& a, const std::string& b) {
  if (!Contains(a) || !Contains(b)) {
    throw std::invalid_argument("link references unknown AS " +
                                (Contains(a) ? b : a));
  }
  if (a == b) throw std::invalid_argument("self link on " + a);
  adj_[a].insert(b);
  adj_[b].insert(a);
}

const std::set<std::string>& AsGraph::neighbors(const std::string& id) const {
  auto it = adj_.find(id);
  return it == adj_.end() ? kNoNeighbors : it->second;
}

void IntraGraph::AddSwitch(const std::string& id, SecurityLabel label,
                           bool gateway) {
  if (!nodes_.emplace(id, Node{label, gateway}).second) {
    throw std::invalid_argument("duplicate switch id " + id);
  }
  adj_[id];
}

void IntraGraph::AddLink(const std::string& a, const std::string& b) {
  if (!Contains(a) || !Contains(b)) {
    throw std::invalid_argument("link references unknown switch " +
                                (Contains(a) ? b : a));
  }
  if (a == b) throw std::invalid_argument("self link on " + a);
  adj_[a].insert(b);
  adj_[b].insert(a);
}

const std::set<std::string>& IntraGraph::neighbors(const std::string& id) const {
  auto it = adj_.find(id);
  return it == adj_.end() ? kNoNeighbors : it->second;
}

bool IntraGraph::Adjacent(const std::string& a, const std::string& b) const {
  return neighbors(a).count(b) > 0;
}

}  // namespace pbsa
