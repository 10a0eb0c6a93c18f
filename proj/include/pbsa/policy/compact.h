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

// Compact angle-bracket Policy Expression form:
//
//   [<id> =] <FlowID, SrcAS, DstAS, SrcIP, DstIP, SrcMAC, DstMAC, User,
//             FlowCons, DomCons, Services, SecProfile, Path>:<Action>
//
// where <Action> is "Allow", "Deny" or "(<exit switch>, Allow)".

#pragma once

#include <string>
#include <string_view>

#include "pbsa/policy/expression.h"

namespace pbsa {

inline constexpr int kCompactConditionFields = 13;

// Throws ParseError; a field-count mismatch reports expected vs found.
// `default_id` is used when the text carries no "<id> =" prefix.
PolicyExpression ParseCompactPe(std::string_view text,
                                std::string default_id = "");

std::string FormatCompactPe(const PolicyExpression& pe);

}  // namespace pbsa
