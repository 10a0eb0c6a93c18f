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

// Parametric scenario families used by sweeps. A scenario document with a
// "generator" block and no "domains" is expanded by these before parsing.
//
//   kind "chain": as_count domains in a line, each a line of switch_count
//     interior switches between its gateways; pe_count policies per domain
//     of which one matches; request_rate flows per window from one source
//     host for `windows` windows, or a single flow when request_rate is 0.
//   kind "flood": one domain, an attacker and a legitimate host on the same
//     edge switch, a web server behind a core switch; the attacker offers
//     `rate` requests per window, the defense responds per `response`.

#pragma once

#include "json.hpp"

namespace pbsa {

// Throws std::invalid_argument for unknown kinds or parameters.
nlohmann::json GenerateScenarioDocument(const nlohmann::json& doc);

}  // namespace pbsa
