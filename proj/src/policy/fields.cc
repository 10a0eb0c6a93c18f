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

#include "fields.h"

#include <charconv>

#include "pbsa/policy/error.h"
#include "pbsa/policy/text_util.h"

namespace pbsa::fields {
namespace {

std::optional<int64_t> ParseInt(std::string_view s) {
  s = text::Trim(s);
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

bool IsSwitchId(std::string_view s) {
  return s.find("SW") != std::string_view::npos;
}

bool IsAsId(std::string_view s) {
  return s.size() > 2 && s.substr(0, 2) == "AS" && !IsSwitchId(s);
}

bool LooksLikeLabel(std::string_view s) {
  if (s.size() < 3 || s.substr(0, 2) != "SL") return false;
  return s[2] >= '0' && s[2] <= '9';
}

}  // namespace

std::optional<std::string> ParseToken(std::string_view raw) {
  std::string_view s = text::StripParens(raw);
  if (text::IsWildcard(s)) return std::nullopt;
  return std::string(s);
}

std::optional<Ipv4Address> ParseIp(std::string_view raw) {
  std::string_view s = text::StripParens(raw);
  if (text::IsWildcard(s)) return std::nullopt;
  auto ip = Ipv4Address::Parse(s);
  if (!ip) throw ParseError("invalid IPv4 address", std::string(raw), 0);
  return ip;
}

std::optional<Cidr> ParseSubnet(std::string_view raw) {
  std::string_view s = text::StripParens(raw);
  if (text::IsWildcard(s)) return std::nullopt;
  auto cidr = Cidr::Parse(s);
  if (!cidr) throw ParseError("invalid CIDR subnet", std::string(raw), 0);
  return cidr;
}

std::optional<MacAddress> ParseMac(std::string_view raw) {
  std::string_view s = text::StripParens(raw);
  if (text::IsWildcard(s)) return std::nullopt;
  auto mac = MacAddress::Parse(s);
  if (!mac) throw ParseError("invalid MAC address", std::string(raw), 0);
  return mac;
}

LabelConstraint ParseLabel(std::string_view raw) {
  std::string_view s = text::StripParens(raw);
  if (text::IsWildcard(s)) return LabelConstraint::Any();
  return ParseLabelConstraint(s);
}

std::optional<ServiceSet> ParseServices(std::string_view raw) {
  std::string_view s = text::StripParens(raw);
  if (text::IsWildcard(s)) return std::nullopt;
  ServiceSet set;
  for (std::string_view item : text::SplitAny(s, ";,")) {
    item = text::Trim(item);
    if (item.empty()) continue;
    size_t dash = item.find('-');
    auto lo = ParseInt(item.substr(0, dash));
    auto hi = dash == std::string_view::npos ? lo
                                             : ParseInt(item.substr(dash + 1));
    if (!lo || !hi || *lo < 0 || *hi > 65535 || *lo > *hi) {
      throw ParseError("invalid service port \"" + std::string(item) + "\"",
                       std::string(raw),
                       static_cast<size_t>(item.data() - raw.data()));
    }
    set.ranges.push_back(
        {static_cast<uint16_t>(*lo), static_cast<uint16_t>(*hi)});
  }
  if (set.ranges.empty()) return std::nullopt;
  return set;
}

std::optional<SecProfile> ParseSecProfile(std::string_view raw) {
  std::string_view s = text::StripParens(raw);
  if (text::IsWildcard(s)) return std::nullopt;
  SecProfile p;
  for (std::string_view item : text::SplitAny(s, ";,")) {
    std::string word = text::Lower(text::Trim(item));
    if (word == "conf") {
      p.conf = true;
    } else if (word == "intg") {
      p.intg = true;
    } else if (word == "none") {
    } else if (!word.empty()) {
      throw ParseError("unknown security service \"" + word + "\"",
                       std::string(raw),
                       static_cast<size_t>(item.data() - raw.data()));
    }
  }
  return p;
}

std::optional<PolicyPath> ParsePath(std::string_view raw) {
  std::string_view s = text::StripParens(raw);
  if (text::IsWildcard(s)) return std::nullopt;
  PolicyPath path;
  bool saw_as = false;
  bool saw_switch = false;
  for (std::string_view item : text::SplitAny(s, ";,")) {
    item = text::Trim(item);
    if (item.empty()) continue;
    if (IsSwitchId(item)) {
      saw_switch = true;
    } else if (IsAsId(item)) {
      saw_as = true;
    } else {
      throw ParseError("path element is neither an AS nor a switch id",
                       std::string(raw),
                       static_cast<size_t>(item.data() - raw.data()));
    }
    path.hops.emplace_back(item);
  }
  if (saw_as && saw_switch) {
    throw ParseError("path mixes AS and switch ids", std::string(raw), 0);
  }
  if (path.hops.empty()) return std::nullopt;
  path.kind = saw_switch ? PathKind::kSwitch : PathKind::kAs;
  return path;
}

PolicyAction ParseActionWord(std::string_view raw) {
  std::string word = text::Lower(text::Trim(raw));
  if (word == "allow") return PolicyAction::kAllow;
  if (word == "deny") return PolicyAction::kDeny;
  throw ParseError("action must be allow or deny", std::string(raw), 0);
}

void ParseAsDescriptor(std::string_view raw, EndpointSelector& sel) {
  std::string_view s = text::StripParens(raw);
  if (text::IsWildcard(s)) return;
  auto dup = [&](std::string_view item) {
    throw ParseError("duplicate AS descriptor element \"" +
                         std::string(item) + "\"",
                     std::string(raw),
                     static_cast<size_t>(item.data() - raw.data()));
  };
  for (std::string_view item : text::SplitAny(s, ";,")) {
    item = text::Trim(item);
    if (text::IsWildcard(item)) continue;
    if (item.find('/') != std::string_view::npos) {
      if (sel.subnet) dup(item);
      sel.subnet = ParseSubnet(item);
    } else if (LooksLikeLabel(item)) {
      if (!sel.label_req.is_any()) dup(item);
      sel.label_req = ParseLabelConstraint(item);
    } else if (IsSwitchId(item)) {
      if (sel.gateway) dup(item);
      sel.gateway = std::string(item);
    } else if (IsAsId(item)) {
      if (sel.as_id) dup(item);
      sel.as_id = std::string(item);
    } else {
      if (sel.as_type) dup(item);
      sel.as_type = std::string(item);
    }
  }
}

std::vector<Constraint> ParseConstraints(std::string_view raw,
                                         std::optional<TimeWindow>* validity) {
  std::vector<Constraint> out;
  std::string_view s = text::StripParens(raw);
  if (text::IsWildcard(s)) return out;
  for (std::string_view item : text::SplitAny(s, ";,")) {
    item = text::Trim(item);
    if (item.empty()) continue;
    if (item.substr(0, 6) == "valid:") {
      std::string_view body = item.substr(6);
      size_t dash = body.find('-', 1);
      auto start = ParseInt(body.substr(0, dash));
      auto end = dash == std::string_view::npos
                     ? std::nullopt
                     : ParseInt(body.substr(dash + 1));
      if (!start || !end || *start > *end) {
        throw ParseError("validity must be valid:<start>-<end>",
                         std::string(raw),
                         static_cast<size_t>(item.data() - raw.data()));
      }
      if (validity == nullptr) {
        throw ParseError("validity not allowed here", std::string(raw), 0);
      }
      *validity = TimeWindow{*start, *end};
      continue;
    }
    out.push_back(ParseConstraint(item));
  }
  return out;
}

std::string FormatToken(const std::optional<std::string>& v) {
  return v ? *v : "*";
}

std::string FormatIp(const std::optional<Ipv4Address>& v) {
  return v ? v->ToString() : "*";
}

std::string FormatSubnet(const std::optional<Cidr>& v) {
  return v ? v->ToString() : "*";
}

std::string FormatMac(const std::optional<MacAddress>& v) {
  return v ? v->ToString() : "*";
}

std::string FormatServices(const std::optional<ServiceSet>& v,
                           char separator) {
  if (!v) return "*";
  std::string out;
  for (const PortRange& r : v->ranges) {
    if (!out.empty()) out += separator;
    out += std::to_string(r.lo);
    if (r.hi != r.lo) out += "-" + std::to_string(r.hi);
  }
  return out;
}

std::string FormatSecProfile(const std::optional<SecProfile>& v) {
  return v ? v->ToString() : "*";
}

std::string FormatPath(const std::optional<PolicyPath>& v, char separator) {
  if (!v) return "*";
  std::string out;
  for (const std::string& hop : v->hops) {
    if (!out.empty()) out += separator;
    out += hop;
  }
  return out;
}

std::string FormatAsDescriptor(const EndpointSelector& sel) {
  std::vector<std::string> parts;
  if (sel.as_id) parts.push_back(*sel.as_id);
  if (sel.subnet) parts.push_back(sel.subnet->ToString());
  if (sel.as_type) parts.push_back(*sel.as_type);
  if (!sel.label_req.is_any()) parts.push_back(sel.label_req.ToString());
  if (sel.gateway) parts.push_back(*sel.gateway);
  if (parts.empty()) return "*";
  std::string out = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  return out + ")";
}

std::string FormatConstraints(const std::vector<Constraint>& cons,
                              const std::optional<TimeWindow>& validity) {
  std::string out = cons.empty() ? "" : FormatConstraintList(cons);
  if (validity) {
    if (!out.empty()) out += ';';
    out += "valid:" + std::to_string(validity->start) + "-" +
           std::to_string(validity->end);
  }
  return out.empty() ? "*" : out;
}

}  // namespace pbsa::fields
