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

// JSON policy repository: an array of flat objects whose values are all
// strings. See docs/policy-grammar.md for the field list.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pbsa/policy/expression.h"

namespace pbsa {

struct RepositoryOptions {
  // Reject fields outside the known set.
  bool strict = true;
};

// Throws ParseError for malformed field values and PolicyError for schema
// violations (unknown field, missing id/action, duplicate id).
std::vector<PolicyExpression> ParseRepository(std::string_view document,
                                              RepositoryOptions options = {});
std::vector<PolicyExpression> ParseRepository(const nlohmann::json& document,
                                              RepositoryOptions options = {});

PolicyExpression ParseRepositoryRecord(const nlohmann::json& record,
                                       RepositoryOptions options = {});

nlohmann::json RepositoryRecord(const PolicyExpression& pe);
std::string SerializeRepository(std::span<const PolicyExpression> pes);

}  // namespace pbsa
