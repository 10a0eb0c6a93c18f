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

#include "pbsa/policy/repository.h"

#include <array>
#include <set>

#include "fields.h"
#include "pbsa/policy/error.h"
#include "pbsa/policy/text_util.h"

namespace pbsa {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 23> kKnownFields = {
    "id",       "flowid",   "srcasid",       "srcassub", "srcastype",
    "srcastrulabel",        "dstasid",       "dstassub", "dstastype",
    "dstastrulabel",        "srcip",         "dstip",    "srcmac",
    "dstmac",   "user",     "flowcons",      "domcons",  "services",
    "secprof",  "seq",      "action",        "srcent",   "dstext"};

bool IsKnown(const std::string& key) {
  for (std::string_view k : kKnownFields) {
    if (k == key) return true;
  }
  return false;
}

std::string Field(const json& record, const char* name) {
  auto it = record.find(name);
  if (it == record.end()) return "";
  if (!it->is_string()) {
    throw PolicyError(std::string("field \"") + name + "\" must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

PolicyExpression ParseRepositoryRecord(const json& record,
                                       RepositoryOptions options) {
  if (!record.is_object()) throw PolicyError("policy record must be an object");
  if (options.strict) {
    for (const auto& [key, value] : record.items()) {
      if (!IsKnown(key)) throw PolicyError("unknown field \"" + key + "\"");
    }
  }
  for (const char* required : {"id", "action"}) {
    if (!record.contains(required)) {
      throw PolicyError(std::string("missing required field \"") + required +
                        "\"");
    }
  }

  PolicyExpression pe;
  pe.id = text::Trim(Field(record, "id"));
  pe.flow_id = fields::ParseToken(Field(record, "flowid"));

  pe.source.as_id = fields::ParseToken(Field(record, "srcasid"));
  pe.source.subnet = fields::ParseSubnet(Field(record, "srcassub"));
  pe.source.as_type = fields::ParseToken(Field(record, "srcastype"));
  pe.source.label_req = fields::ParseLabel(Field(record, "srcastrulabel"));
  pe.source.gateway = fields::ParseToken(Field(record, "srcent"));
  pe.source.host_ip = fields::ParseIp(Field(record, "srcip"));
  pe.source.host_mac = fields::ParseMac(Field(record, "srcmac"));

  pe.dest.as_id = fields::ParseToken(Field(record, "dstasid"));
  pe.dest.subnet = fields::ParseSubnet(Field(record, "dstassub"));
  pe.dest.as_type = fields::ParseToken(Field(record, "dstastype"));
  pe.dest.label_req = fields::ParseLabel(Field(record, "dstastrulabel"));
  pe.dest.host_ip = fields::ParseIp(Field(record, "dstip"));
  pe.dest.host_mac = fields::ParseMac(Field(record, "dstmac"));

  pe.user = fields::ParseToken(Field(record, "user"));
  pe.flow_cons =
      fields::ParseConstraints(Field(record, "flowcons"), &pe.validity);
  pe.dom_cons = fields::ParseConstraints(Field(record, "domcons"), nullptr);
  pe.services = fields::ParseServices(Field(record, "services"));
  pe.sec_profile = fields::ParseSecProfile(Field(record, "secprof"));
  pe.path = fields::ParsePath(Field(record, "seq"));
  pe.action = fields::ParseActionWord(Field(record, "action"));
  pe.action_exit = fields::ParseToken(Field(record, "dstext"));

  pe.Validate();
  return pe;
}

std::vector<PolicyExpression> ParseRepository(const json& document,
                                              RepositoryOptions options) {
  if (!document.is_array()) {
    throw PolicyError("policy repository must be a JSON array");
  }
  std::vector<PolicyExpression> out;
  std::set<std::string> ids;
  for (const json& record : document) {
    PolicyExpression pe = ParseRepositoryRecord(record, options);
    if (!ids.insert(pe.id).second) {
      throw PolicyError("duplicate policy id \"" + pe.id + "\"");
    }
    out.push_back(std::move(pe));
  }
  return out;
}

std::vector<PolicyExpression> ParseRepository(std::string_view document,
                                              RepositoryOptions options) {
  json parsed;
  try {
    parsed = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(),
                     std::string(document.substr(0, 80)), e.byte);
  }
  return ParseRepository(parsed, options);
}

json RepositoryRecord(const PolicyExpression& pe) {
  json r = json::object();
  r["id"] = pe.id;
  r["flowid"] = fields::FormatToken(pe.flow_id);
  r["srcasid"] = fields::FormatToken(pe.source.as_id);
  r["srcassub"] = fields::FormatSubnet(pe.source.subnet);
  r["srcastype"] = fields::FormatToken(pe.source.as_type);
  r["srcastrulabel"] = pe.source.label_req.ToString();
  r["dstasid"] = fields::FormatToken(pe.dest.as_id);
  r["dstassub"] = fields::FormatSubnet(pe.dest.subnet);
  r["dstastype"] = fields::FormatToken(pe.dest.as_type);
  r["dstastrulabel"] = pe.dest.label_req.ToString();
  r["srcip"] = fields::FormatIp(pe.source.host_ip);
  r["dstip"] = fields::FormatIp(pe.dest.host_ip);
  r["srcmac"] = fields::FormatMac(pe.source.host_mac);
  r["dstmac"] = fields::FormatMac(pe.dest.host_mac);
  r["user"] = fields::FormatToken(pe.user);
  r["flowcons"] = fields::FormatConstraints(pe.flow_cons, pe.validity);
  r["domcons"] = fields::FormatConstraints(pe.dom_cons, std::nullopt);
  r["services"] = fields::FormatServices(pe.services, ',');
  r["secprof"] = fields::FormatSecProfile(pe.sec_profile);
  r["seq"] = fields::FormatPath(pe.path, ',');
  r["action"] = pe.action == PolicyAction::kAllow ? "allow" : "deny";
  if (pe.source.gateway) r["srcent"] = *pe.source.gateway;
  if (pe.action_exit) r["dstext"] = *pe.action_exit;
  return r;
}

std::string SerializeRepository(std::span<const PolicyExpression> pes) {
  json doc = json::array();
  for (const PolicyExpression& pe : pes) doc.push_back(RepositoryRecord(pe));
  return doc.dump(2);
}

}  // namespace pbsa
