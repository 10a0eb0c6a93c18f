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
#include <string>
#include <string_view>
#include <vector>

#include "pbsa/policy/constraint.h"

namespace pbsa {

// Per-AS tagging keys. A controller holds its own key plus the keys of its
// neighbors, which is enough to verify whatever arrives over a gateway.
using Keyring = std::map<std::string, std::string>;

// Hex HMAC-SHA256 of `data` under `key`.
std::string HmacSha256Hex(std::string_view key, std::string_view data);
// Constant-time comparison of two hex tags.
bool TagsEqual(std::string_view a, std::string_view b);

// Visited-AS list travelling with a flow. The tag is computed by the AS at
// the end of `visited` over SigningText().
struct Handle {
  std::string flow_id;
  std::string origin_as;
  std::vector<std::string> visited;
  std::string tag;

  std::string SigningText() const;
  friend bool operator==(const Handle&, const Handle&) = default;
};

// Flow-scoped constraints delegated downstream. `issuer_as` is the AS that
// last re-emitted (and tagged) the token; `origin_as` never changes.
struct PolicyTransferToken {
  std::string flow_id;
  std::string origin_as;
  std::string issuer_as;
  std::vector<Constraint> constraints;
  std::string tag;

  std::string SigningText() const;
  friend bool operator==(const PolicyTransferToken&,
                         const PolicyTransferToken&) = default;
};

void SignHandle(Handle& h, std::string_view key);
void SignToken(PolicyTransferToken& t, std::string_view key);

// Tag check only, with the key of the signer named inside the object.
bool VerifyHandleTag(const Handle& h, const Keyring& keys);
bool VerifyTokenTag(const PolicyTransferToken& t, const Keyring& keys);

}  // namespace pbsa
