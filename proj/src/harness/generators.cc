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

#include "pbsa/harness/generators.h"

#include <set>
#include <stdexcept>
#include <string>

namespace pbsa {

using nlohmann::json;

namespace {

// Generated experiments measure the controller, so tables are sized to
// never fill.
constexpr int64_t kGeneratedTableCapacity = 65536;

int64_t Param(const json& g, const char* key, int64_t fallback) {
  if (!g.contains(key)) return fallback;
  if (!g.at(key).is_number_integer()) {
    throw std::invalid_argument(std::string(key) + " must be an integer");
  }
  return g.at(key).get<int64_t>();
}

void CheckKeys(const json& g, const std::set<std::string>& allowed) {
  for (const auto& [key, v] : g.items()) {
    if (!allowed.count(key)) {
      throw std::invalid_argument("unknown generator parameter \"" + key + "\"");
    }
  }
}

std::string Mac(int a, int b) {
  char buf[18];
  std::snprintf(buf, sizeof buf, "02:00:00:%02x:%02x:%02x", a & 0xff,
                (b >> 8) & 0xff, b & 0xff);
  return buf;
}

json Allow(const std::string& id, int dport) {
  return {{"id", id}, {"services", std::to_string(dport)}, {"action", "Allow"}};
}

// Never matches traffic the generators produce: every padding PE names a
// service port no generated flow uses.
json Padding(int k) {
  return {{"id", "pad" + std::to_string(100000 + k).substr(1)},
          {"services", std::to_string(20000 + k)},
          {"action", "Allow"}};
}

json Chain(const json& doc, const json& g) {
  CheckKeys(g, {"kind", "as_count", "switch_count", "pe_count", "request_rate",
                "window", "windows", "pbsa", "queue_capacity", "costs",
                "link", "control", "table_capacity"});
  int64_t n_as = Param(g, "as_count", 1);
  int64_t n_sw = Param(g, "switch_count", 3);
  int64_t n_pe = Param(g, "pe_count", 1);
  int64_t rate = Param(g, "request_rate", 0);
  int64_t window = Param(g, "window", 1000);
  int64_t windows = Param(g, "windows", 10);
  if (n_as < 1 || n_as > 200) throw std::invalid_argument("as_count out of range");
  if (n_sw < 1 || n_sw > 5000) throw std::invalid_argument("switch_count out of range");
  if (n_pe < 1 || n_pe > 100000) throw std::invalid_argument("pe_count out of range");
  if (rate < 0 || window < 1 || windows < 1) {
    throw std::invalid_argument("bad request_rate/window/windows");
  }

  json out = {{"name", doc.value("name", "chain")},
              {"seed", doc.value("seed", 1)},
              {"pbsa", g.value("pbsa", true)},
              {"timing",
               {{"link", Param(g, "link", 1)},
                {"control", Param(g, "control", 2)},
                {"queue_capacity", Param(g, "queue_capacity", 0)}}}};
  json domains = json::array();
  json as_links = json::array();
  for (int64_t i = 1; i <= n_as; ++i) {
    std::string as = "AS" + std::to_string(i);
    json d = {{"id", as},
              {"subnet", "10." + std::to_string(i) + ".0.0/16"},
              {"type", "EDU"},
              {"label", "SL2"},
              {"key", "chain-key-" + std::to_string(i)}};
    if (g.contains("costs")) d["costs"] = g.at("costs");
    d["table_capacity"] = Param(g, "table_capacity", kGeneratedTableCapacity);
    json switches = json::array();
    json links = json::array();
    std::string prev;
    auto add = [&](const std::string& id, bool gateway) {
      switches.push_back({{"id", id}, {"label", "SL2"}, {"gateway", gateway}});
      if (!prev.empty()) links.push_back({prev, id});
      prev = id;
    };
    if (i > 1) add(std::to_string(i) + "SW" + std::to_string(i - 1), true);
    for (int64_t k = 1; k <= n_sw; ++k) {
      add("s" + std::to_string(i) + "." + std::to_string(k), false);
    }
    if (i < n_as) add(std::to_string(i) + "SW" + std::to_string(i + 1), true);
    d["switches"] = switches;
    d["links"] = links;
    json hosts = json::array();
    if (i == 1) {
      hosts.push_back({{"id", "src"}, {"ip", "10.1.0.10"}, {"mac", Mac(1, 10)},
                       {"switch", "s1.1"}});
    }
    if (i == n_as) {
      hosts.push_back({{"id", "dst"},
                       {"ip", "10." + std::to_string(i) + ".0.20"},
                       {"mac", Mac(static_cast<int>(i), 20)},
                       {"switch", "s" + std::to_string(i) + "." + std::to_string(n_sw)}});
    }
    d["hosts"] = hosts;
    json policies = json::array();
    for (int64_t k = 1; k < n_pe; ++k) policies.push_back(Padding(static_cast<int>(k)));
    policies.push_back(Allow("web", 80));
    d["policies"] = policies;
    domains.push_back(d);
    if (i > 1) as_links.push_back({"AS" + std::to_string(i - 1), as});
  }
  out["domains"] = domains;
  out["as_links"] = as_links;
  std::string dst = "10." + std::to_string(n_as) + ".0.20";
  if (rate == 0) {
    out["traffic"] = json::array({{{"id", "probe"}, {"src", "src"}, {"dst", dst},
                                   {"sport", 40000}, {"dport", 80}, {"type", "HTTP"}}});
  } else {
    out["bursts"] = json::array({{{"id", "load"}, {"src", "src"}, {"dst", dst},
                                  {"dport", 80}, {"type", "HTTP"},
                                  {"duration", window * windows},
                                  {"rate", rate}, {"window", window}}});
  }
  return out;
}

json Flood(const json& doc, const json& g) {
  CheckKeys(g, {"kind", "rate", "legit_rate", "response", "cc", "x", "y",
                "window", "windows", "link", "control", "table_capacity"});
  int64_t window = Param(g, "window", 1000);
  int64_t windows = Param(g, "windows", 10);
  std::string response = g.value("response", "throttle");
  json d = {{"id", "AS1"},
            {"subnet", "10.1.0.0/16"},
            {"type", "EDU"},
            {"label", "SL2"},
            {"key", "flood-key"},
            {"switches", {{{"id", "edge"}, {"label", "SL1"}},
                          {{"id", "core"}, {"label", "SL2"}}}},
            {"links", json::array({json::array({"edge", "core"})})},
            {"hosts",
             {{{"id", "attacker"}, {"ip", "10.1.0.66"}, {"mac", Mac(1, 66)}, {"switch", "edge"}},
              {{"id", "legit"}, {"ip", "10.1.0.7"}, {"mac", Mac(1, 7)}, {"switch", "edge"}},
              {{"id", "server"}, {"ip", "10.1.1.80"}, {"mac", Mac(1, 80)}, {"switch", "core"}}}},
            {"policies", {Allow("web", 80)}},
            {"table_capacity", Param(g, "table_capacity", kGeneratedTableCapacity)},
            {"costs",
             {{"context", 1}, {"defense", 0}, {"select_base", 0},
              {"select_per_pe_milli", 0}, {"handle", 0}, {"path", 0}, {"per_rule", 0}}},
            {"defense",
             {{"cc", Param(g, "cc", 5000)},
              {"x", Param(g, "x", 2)},
              {"y", Param(g, "y", 10)},
              {"window", window},
              {"response", response}}}};
  json out = {{"name", doc.value("name", "flood")},
              {"seed", doc.value("seed", 1)},
              {"timing", {{"link", Param(g, "link", 1)}, {"control", Param(g, "control", 2)}}},
              {"domains", {d}},
              {"bursts",
               {{{"id", "attack"}, {"src", "attacker"}, {"dst", "10.1.1.80"},
                 {"dport", 80}, {"type", "SYN"}, {"duration", window * windows},
                 {"rate", Param(g, "rate", 300)}, {"window", window}},
                {{"id", "legit"}, {"src", "legit"}, {"dst", "10.1.1.80"},
                 {"dport", 80}, {"type", "HTTP"}, {"duration", window * windows},
                 {"rate", Param(g, "legit_rate", 10)}, {"window", window}}}}};
  return out;
}

}  // namespace

json GenerateScenarioDocument(const json& doc) {
  const json& g = doc.at("generator");
  if (!g.is_object() || !g.contains("kind") || !g.at("kind").is_string()) {
    throw std::invalid_argument("generator needs a string \"kind\"");
  }
  std::string kind = g.at("kind").get<std::string>();
  if (kind == "chain") return Chain(doc, g);
  if (kind == "flood") return Flood(doc, g);
  throw std::invalid_argument("unknown generator kind \"" + kind + "\"");
}

}  // namespace pbsa
