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
#include <string>
#include <string_view>
#include <vector>

#include "pbsa/policy/label.h"

namespace pbsa {

// One FlowCons / DomCons entry.
//
//   SL2+=            label requirement on every element of the path
//   rate<=100        at most 100 flow setups per monitor window
//   pkt:type=HTTP    packet attribute predicate (keys: type, port, proto)
//   sig:SYN_FLOOD    named attack signature carried by the packet
struct Constraint {
  enum class Kind { kLabelPath, kRateThreshold, kPacketAttr, kSignature };

  Kind kind = Kind::kLabelPath;
  LabelConstraint label;  // kLabelPath
  int64_t rate = 0;       // kRateThreshold, > 0
  std::string key;        // kPacketAttr
  std::string value;      // kPacketAttr value, kSignature name

  static Constraint LabelPath(LabelConstraint label);
  static Constraint RateThreshold(int64_t rate);
  static Constraint PacketAttr(std::string key, std::string value);
  static Constraint Signature(std::string name);

  // Kinds that may travel in a Policy Transfer Token.
  bool flow_scoped() const { return kind != Kind::kSignature; }
  // Kinds evaluated while matching a PE against a flow.
  bool is_match_condition() const {
    return kind == Kind::kPacketAttr || kind == Kind::kSignature;
  }

  std::string ToString() const;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

// Throws ParseError.
Constraint ParseConstraint(std::string_view text);

// Splits on ';' or ','. "*" and "" yield an empty list.
std::vector<Constraint> ParseConstraintList(std::string_view text);

// ';'-joined canonical text, "*" when empty.
std::string FormatConstraintList(const std::vector<Constraint>& list);

}  // namespace pbsa
