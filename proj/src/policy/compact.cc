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

#include "pbsa/policy/compact.h"

#include <vector>

#include "fields.h"
#include "pbsa/policy/error.h"
#include "pbsa/policy/text_util.h"

namespace pbsa {
namespace {

// Position of the '>' that closes the '<' at `open`, skipping "<=" inside
// constraint text such as "rate<=10".
size_t FindClose(std::string_view s, size_t open) {
  for (size_t i = open + 1; i < s.size(); ++i) {
    if (s[i] == '>' && !(i > 0 && s[i - 1] == '<')) return i;
  }
  return std::string_view::npos;
}

void ParseAction(std::string_view raw, const std::string& input,
                 PolicyExpression& pe) {
  std::string_view s = text::StripParens(raw);
  std::vector<std::string_view> parts = text::SplitAny(s, ",;");
  if (parts.size() == 1) {
    pe.action = fields::ParseActionWord(parts[0]);
    return;
  }
  if (parts.size() != 2) {
    throw ParseError("action must be <Allow>, <Deny> or <(exit, Allow)>",
                     input, static_cast<size_t>(raw.data() - input.data()));
  }
  pe.action_exit = std::string(text::Trim(parts[0]));
  pe.action = fields::ParseActionWord(parts[1]);
}

}  // namespace

PolicyExpression ParseCompactPe(std::string_view raw, std::string default_id) {
  const std::string input(raw);
  std::string_view s = text::Trim(input);
  PolicyExpression pe;
  pe.id = std::move(default_id);

  size_t open = s.find('<');
  if (open == std::string_view::npos) {
    throw ParseError("expected '<' opening the condition list", input, 0);
  }
  std::string_view prefix = text::Trim(s.substr(0, open));
  if (!prefix.empty()) {
    if (prefix.back() != '=') {
      throw ParseError("expected \"<id> =\" before '<'", input, 0);
    }
    pe.id = std::string(text::Trim(prefix.substr(0, prefix.size() - 1)));
  }

  size_t close = FindClose(s, open);
  if (close == std::string_view::npos) {
    throw ParseError("unterminated condition list", input, open);
  }
  std::string_view conditions = s.substr(open + 1, close - open - 1);
  std::string_view rest = text::Trim(s.substr(close + 1));
  if (rest.empty() || rest.front() != ':') {
    throw ParseError("expected ':' after condition list", input, close + 1);
  }
  rest = text::Trim(rest.substr(1));
  if (rest.size() < 2 || rest.front() != '<' || rest.back() != '>') {
    throw ParseError("expected <Action>", input,
                     static_cast<size_t>(rest.data() - s.data()));
  }
  ParseAction(rest.substr(1, rest.size() - 2), input, pe);

  std::vector<std::string_view> f = text::SplitAny(conditions, ",");
  if (static_cast<int>(f.size()) != kCompactConditionFields) {
    throw ParseError("expected " + std::to_string(kCompactConditionFields) +
                         " condition fields, found " +
                         std::to_string(f.size()),
                     input, open);
  }

  pe.flow_id = fields::ParseToken(f[0]);
  fields::ParseAsDescriptor(f[1], pe.source);
  fields::ParseAsDescriptor(f[2], pe.dest);
  if (pe.dest.gateway) {
    if (pe.action_exit && *pe.action_exit != *pe.dest.gateway) {
      throw ParseError("destination exit conflicts with action exit", input,
                       static_cast<size_t>(f[2].data() - s.data()));
    }
    pe.action_exit = std::move(pe.dest.gateway);
    pe.dest.gateway.reset();
  }
  pe.source.host_ip = fields::ParseIp(f[3]);
  pe.dest.host_ip = fields::ParseIp(f[4]);
  pe.source.host_mac = fields::ParseMac(f[5]);
  pe.dest.host_mac = fields::ParseMac(f[6]);
  pe.user = fields::ParseToken(f[7]);
  pe.flow_cons = fields::ParseConstraints(f[8], &pe.validity);
  pe.dom_cons = fields::ParseConstraints(f[9], nullptr);
  pe.services = fields::ParseServices(f[10]);
  pe.sec_profile = fields::ParseSecProfile(f[11]);
  pe.path = fields::ParsePath(f[12]);

  if (pe.id.empty()) pe.id = "anonymous";
  pe.Validate();
  return pe;
}

namespace {

std::string Group(const std::string& list) {
  if (list == "*" || list.find_first_of(";,") == std::string::npos) {
    return list;
  }
  return "(" + list + ")";
}

}  // namespace

std::string FormatCompactPe(const PolicyExpression& pe) {
  std::vector<std::string> f;
  f.reserve(kCompactConditionFields);
  f.push_back(fields::FormatToken(pe.flow_id));
  f.push_back(fields::FormatAsDescriptor(pe.source));
  f.push_back(fields::FormatAsDescriptor(pe.dest));
  f.push_back(fields::FormatIp(pe.source.host_ip));
  f.push_back(fields::FormatIp(pe.dest.host_ip));
  f.push_back(fields::FormatMac(pe.source.host_mac));
  f.push_back(fields::FormatMac(pe.dest.host_mac));
  f.push_back(fields::FormatToken(pe.user));
  f.push_back(Group(fields::FormatConstraints(pe.flow_cons, pe.validity)));
  f.push_back(Group(fields::FormatConstraints(pe.dom_cons, std::nullopt)));
  f.push_back(Group(fields::FormatServices(pe.services, ';')));
  std::string prof = fields::FormatSecProfile(pe.sec_profile);
  f.push_back(prof.find(',') == std::string::npos ? prof : "{" + prof + "}");
  f.push_back(Group(fields::FormatPath(pe.path, ';')));

  std::string out = pe.id + " = <";
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) out += ", ";
    out += f[i];
  }
  out += ">:<";
  const char* verb = pe.action == PolicyAction::kAllow ? "Allow" : "Deny";
  if (pe.action_exit) {
    out += "(" + *pe.action_exit + ", " + verb + ")";
  } else {
    out += verb;
  }
  return out + ">";
}

}  // namespace pbsa
