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

// Small string helpers shared by the policy parsers.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pbsa::text {

std::string_view Trim(std::string_view s);
std::string Lower(std::string_view s);

// Removes one enclosing pair of () or {} if present.
std::string_view StripParens(std::string_view s);

// "*" or empty after trimming.
bool IsWildcard(std::string_view s);

// Splits on any character in `separators` that is not nested inside
// () or {}. Pieces are not trimmed.
std::vector<std::string_view> SplitAny(std::string_view s,
                                       std::string_view separators);

}  // namespace pbsa::text
