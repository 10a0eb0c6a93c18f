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

// Per-field parsers and formatters shared by the repository and compact
// policy formats. Every parser maps "*" and "" to the wildcard.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbsa/policy/expression.h"

namespace pbsa::fields {

std::optional<std::string> ParseToken(std::string_view text);
std::optional<Ipv4Address> ParseIp(std::string_view text);
std::optional<Cidr> ParseSubnet(std::string_view text);
std::optional<MacAddress> ParseMac(std::string_view text);
LabelConstraint ParseLabel(std::string_view text);
std::optional<ServiceSet> ParseServices(std::string_view text);
std::optional<SecProfile> ParseSecProfile(std::string_view text);
std::optional<PolicyPath> ParsePath(std::string_view text);
PolicyAction ParseActionWord(std::string_view text);

// Parenthesized AS descriptor such as "(10.0.0.0/24, EDU, SL2)" or a bare
// "AS2". Elements are classified by shape: CIDR -> subnet, SL<n>[+=|-=] ->
// label, AS<id> -> as_id, <a>SW<b> -> gateway, anything else -> type.
void ParseAsDescriptor(std::string_view text, EndpointSelector& sel);

// Constraint list with "valid:<start>-<end>" entries split out into
// `validity`.
std::vector<Constraint> ParseConstraints(
    std::string_view text, std::optional<TimeWindow>* validity);

std::string FormatToken(const std::optional<std::string>& v);
std::string FormatIp(const std::optional<Ipv4Address>& v);
std::string FormatSubnet(const std::optional<Cidr>& v);
std::string FormatMac(const std::optional<MacAddress>& v);
std::string FormatServices(const std::optional<ServiceSet>& v,
                           char separator);
std::string FormatSecProfile(const std::optional<SecProfile>& v);
std::string FormatPath(const std::optional<PolicyPath>& v, char separator);
std::string FormatAsDescriptor(const EndpointSelector& sel);
std::string FormatConstraints(const std::vector<Constraint>& cons,
                              const std::optional<TimeWindow>& validity);

}  // namespace pbsa::fields
