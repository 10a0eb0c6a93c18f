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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pbsa/dataplane/packet.h"
#include "pbsa/interdomain/token.h"
#include "pbsa/topology/repository.h"

namespace pbsa {

class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WireFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// True iff the tag verifies under the key of visited.back(), visited has no
// duplicates and does not contain `self_as`, and visited.back() is a
// neighbor of `self_as` in `topo`.
bool ValidateHandle(const Handle& handle, const std::string& self_as,
                    const Keyring& keys, const TopologyRepository& topo);

struct MergedConstraints {
  std::vector<Constraint> constraints;
  bool satisfiable = true;
};

// Conjunction of two constraint lists. Label constraints collapse into one
// equivalent set (EQ, GEQ, LEQ or a GEQ/LEQ pair); rate thresholds keep the
// smallest; everything else is a de-duplicated union, `local` first.
MergedConstraints MergeConstraints(const std::vector<Constraint>& local,
                                   const std::vector<Constraint>& remote);

// Label constraints equivalent to `range`; empty for the unbounded range.
std::vector<Constraint> LabelRangeConstraints(const LabelRange& range);

struct AugmentedPacket {
  Packet packet;  // handle/ptt fields of the inner packet are ignored
  Handle handle;
  std::optional<PolicyTransferToken> ptt;

  friend bool operator==(const AugmentedPacket&,
                         const AugmentedPacket&) = default;
};

// Line-oriented text form, one "<key> <value>" per line in fixed order.
// See docs/policy-grammar.md.
std::string SerializeAugmented(const AugmentedPacket& aug);
// Throws WireFormatError on any deviation from the canonical layout.
AugmentedPacket DeserializeAugmented(std::string_view text);

}  // namespace pbsa
