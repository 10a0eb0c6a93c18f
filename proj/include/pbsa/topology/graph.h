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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pbsa/net/address.h"
#include "pbsa/policy/label.h"

namespace pbsa {

struct AsDescriptor {
  std::string id;
  Cidr subnet;
  std::string type;
  SecurityLabel label{1};
  std::string controller_id;

  friend bool operator==(const AsDescriptor&, const AsDescriptor&) = default;
};

// Edge switch of AS `from` facing AS `to`, e.g. GatewayName("AS1","AS2") is
// "1SW2". AS ids without a numeric suffix are used whole.
std::string GatewayName(std::string_view from_as, std::string_view to_as);

// Inverse of GatewayName for ids following the "AS<n>" convention; nullopt
// for anything that is not "<a>SW<b>".
std::optional<std::pair<std::string, std::string>> ParseGatewayName(
    std::string_view name);

class AsGraph {
 public:
  // Throws std::invalid_argument on duplicate ids.
  void AddAs(AsDescriptor as);
  // Throws std::invalid_argument on unknown ids or self links.
  void AddLink(const std::string& a, const std::string& b);

  bool Contains(const std::string& id) const { return ases_.count(id) > 0; }
  const AsDescriptor& at(const std::string& id) const { return ases_.at(id); }
  const std::map<std::string, AsDescriptor>& ases() const { return ases_; }
  const std::set<std::string>& neighbors(const std::string& id) const;

 private:
  std::map<std::string, AsDescriptor> ases_;
  std::map<std::string, std::set<std::string>> adj_;
};

// Switch adjacency of one domain with a label per switch. Gateways are the
// edge switches of the domain.
class IntraGraph {
 public:
  struct Node {
    SecurityLabel label{1};
    bool gateway = false;
  };

  void AddSwitch(const std::string& id, SecurityLabel label, bool gateway);
  void AddLink(const std::string& a, const std::string& b);

  bool Contains(const std::string& id) const { return nodes_.count(id) > 0; }
  const Node& node(const std::string& id) const { return nodes_.at(id); }
  const std::map<std::string, Node>& nodes() const { return nodes_; }
  const std::set<std::string>& neighbors(const std::string& id) const;
  bool Adjacent(const std::string& a, const std::string& b) const;

 private:
  std::map<std::string, Node> nodes_;
  std::map<std::string, std::set<std::string>> adj_;
};

}  // namespace pbsa
