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

#include "pbsa/policy/constraint.h"

#include <charconv>

#include "pbsa/policy/error.h"
#include "pbsa/policy/text_util.h"

namespace pbsa {

Constraint Constraint::LabelPath(LabelConstraint label) {
  Constraint c;
  c.kind = Kind::kLabelPath;
  c.label = label;
  return c;
}

Constraint Constraint::RateThreshold(int64_t rate) {
  if (rate <= 0) throw PolicyError("rate threshold must be > 0");
  Constraint c;
  c.kind = Kind::kRateThreshold;
  c.rate = rate;
  return c;
}

Constraint Constraint::PacketAttr(std::string key, std::string value) {
  Constraint c;
  c.kind = Kind::kPacketAttr;
  c.key = std::move(key);
  c.value = std::move(value);
  return c;
}

Constraint Constraint::Signature(std::string name) {
  Constraint c;
  c.kind = Kind::kSignature;
  c.value = std::move(name);
  return c;
}

std::string Constraint::ToString() const {
  switch (kind) {
    case Kind::kLabelPath:
      return label.ToString();
    case Kind::kRateThreshold:
      return "rate<=" + std::to_string(rate);
    case Kind::kPacketAttr:
      return "pkt:" + key + "=" + value;
    case Kind::kSignature:
      return "sig:" + value;
  }
  return "";
}

Constraint ParseConstraint(std::string_view raw) {
  std::string_view text = text::Trim(raw);
  const std::string input(raw);
  if (text.empty()) throw ParseError("empty constraint", input, 0);
  if (text.substr(0, 2) == "SL") {
    return Constraint::LabelPath(ParseLabelConstraint(text));
  }
  if (text.substr(0, 6) == "rate<=") {
    std::string_view digits = text.substr(6);
    int64_t rate = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), rate);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw ParseError("invalid rate threshold", input, 6);
    }
    if (rate <= 0) throw ParseError("rate threshold must be > 0", input, 6);
    return Constraint::RateThreshold(rate);
  }
  if (text.substr(0, 4) == "pkt:") {
    std::string_view body = text.substr(4);
    size_t eq = body.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == body.size()) {
      throw ParseError("packet attribute must be pkt:<key>=<value>", input, 4);
    }
    std::string key = text::Lower(body.substr(0, eq));
    if (key != "type" && key != "port" && key != "proto") {
      throw ParseError("unknown packet attribute \"" + key + "\"", input, 4);
    }
    return Constraint::PacketAttr(std::move(key),
                                  std::string(body.substr(eq + 1)));
  }
  if (text.substr(0, 4) == "sig:") {
    if (text.size() == 4) throw ParseError("empty signature name", input, 4);
    return Constraint::Signature(std::string(text.substr(4)));
  }
  throw ParseError("unrecognized constraint", input, 0);
}

std::vector<Constraint> ParseConstraintList(std::string_view raw) {
  std::vector<Constraint> out;
  std::string_view text = text::StripParens(text::Trim(raw));
  if (text::IsWildcard(text)) return out;
  for (std::string_view item : text::SplitAny(text, ";,")) {
    item = text::Trim(item);
    if (item.empty()) continue;
    out.push_back(ParseConstraint(item));
  }
  return out;
}

std::string FormatConstraintList(const std::vector<Constraint>& list) {
  if (list.empty()) return "*";
  std::string out;
  for (const Constraint& c : list) {
    if (!out.empty()) out += ';';
    out += c.ToString();
  }
  return out;
}

}  // namespace pbsa
