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

#include "pbsa/harness/scenario.h"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "pbsa/harness/generators.h"
#include "pbsa/policy/compact.h"
#include "pbsa/policy/error.h"
#include "pbsa/policy/repository.h"

namespace pbsa {

using nlohmann::json;

namespace {

// A JSON value together with its path in the document, for error messages.
class Node {
 public:
  Node(const json& value, std::string path)
      : value_(value), path_(std::move(path)) {}

  const json& value() const { return value_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void Fail(const std::string& what) const {
    throw ScenarioError(path_ + ": " + what);
  }

  void ExpectObject(std::initializer_list<const char*> allowed) const {
    if (!value_.is_object()) Fail("expected an object");
    for (const auto& [key, v] : value_.items()) {
      if (std::none_of(allowed.begin(), allowed.end(),
                       [&](const char* k) { return key == k; })) {
        Child(key).Fail("unknown field");
      }
    }
  }

  bool Has(const char* key) const { return value_.contains(key); }
  Node Child(const std::string& key) const {
    return Node(value_.at(key), path_ + "." + key);
  }
  Node Required(const char* key) const {
    if (!value_.contains(key)) Fail(std::string("missing field \"") + key + "\"");
    return Child(key);
  }

  std::vector<Node> Items() const {
    if (!value_.is_array()) Fail("expected an array");
    std::vector<Node> out;
    for (size_t i = 0; i < value_.size(); ++i) {
      out.emplace_back(value_[i], path_ + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  std::string Str() const {
    if (!value_.is_string()) Fail("expected a string");
    return value_.get<std::string>();
  }
  int64_t Int(int64_t lo = INT64_MIN) const {
    if (!value_.is_number_integer()) Fail("expected an integer");
    int64_t v = value_.get<int64_t>();
    if (v < lo) Fail("must be >= " + std::to_string(lo));
    return v;
  }
  bool Bool() const {
    if (!value_.is_boolean()) Fail("expected true or false");
    return value_.get<bool>();
  }

  std::string Str(const char* key, std::string fallback) const {
    return Has(key) ? Child(key).Str() : fallback;
  }
  int64_t Int(const char* key, int64_t fallback, int64_t lo = INT64_MIN) const {
    return Has(key) ? Child(key).Int(lo) : fallback;
  }

  Ipv4Address Ip() const {
    auto a = Ipv4Address::Parse(Str());
    if (!a) Fail("bad IPv4 address \"" + Str() + "\"");
    return *a;
  }
  MacAddress Mac() const {
    auto m = MacAddress::Parse(Str());
    if (!m) Fail("bad MAC address \"" + Str() + "\"");
    return *m;
  }
  Cidr Subnet() const {
    auto c = Cidr::Parse(Str());
    if (!c) Fail("bad subnet \"" + Str() + "\"");
    return *c;
  }
  SecurityLabel Label() const {
    auto l = SecurityLabel::Parse(Str());
    if (!l) Fail("bad security label \"" + Str() + "\"");
    return *l;
  }
  std::pair<std::string, std::string> Pair() const {
    auto items = Items();
    if (items.size() != 2) Fail("expected a pair");
    return {items[0].Str(), items[1].Str()};
  }

 private:
  const json& value_;
  std::string path_;
};

Rational ParseDecay(const Node& n) {
  std::string s = n.Str();
  try {
    size_t slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    n.Fail("bad fraction \"" + s + "\"");
  }
}

MonitorConfig ParseDefense(const Node& n) {
  n.ExpectObject({"cc", "x", "y", "cs", "window", "response", "instances",
                  "history_windows", "decay"});
  MonitorConfig c;
  c.capacity.cc = n.Required("cc").Int(1);
  c.capacity.x = n.Int("x", 1, 1);
  c.capacity.y = n.Int("y", 1, 1);
  c.capacity.cs = n.Int("cs", 0, 0);
  c.window = n.Int("window", c.window, 1);
  std::string response = n.Str("response", "throttle");
  if (response == "none") {
    c.response = ResponsePolicy::kNone;
  } else if (response == "throttle") {
    c.response = ResponsePolicy::kThrottle;
  } else if (response == "drop_rule") {
    c.response = ResponsePolicy::kDropRule;
  } else {
    n.Child("response").Fail("expected none, throttle or drop_rule");
  }
  c.instances = static_cast<int>(n.Int("instances", 1, 1));
  c.history_windows = static_cast<int>(n.Int("history_windows", 1, 1));
  if (n.Has("decay")) c.decay = ParseDecay(n.Child("decay"));
  try {
    FloodMonitor probe(c);
  } catch (const ConfigError& e) {
    n.Fail(e.what());
  }
  return c;
}

CostModel ParseCosts(const Node& n) {
  n.ExpectObject({"context", "defense", "select_base", "select_per_pe_milli",
                  "handle", "path", "per_rule"});
  CostModel c;
  c.context = n.Int("context", c.context, 0);
  c.defense = n.Int("defense", c.defense, 0);
  c.select_base = n.Int("select_base", c.select_base, 0);
  c.select_per_pe_milli = n.Int("select_per_pe_milli", c.select_per_pe_milli, 0);
  c.handle = n.Int("handle", c.handle, 0);
  c.path = n.Int("path", c.path, 0);
  c.per_rule = n.Int("per_rule", c.per_rule, 0);
  return c;
}

std::vector<PolicyExpression> ParsePolicies(const Node& n) {
  std::vector<PolicyExpression> out;
  std::set<std::string> ids;
  for (const Node& item : n.Items()) {
    PolicyExpression pe;
    try {
      if (item.value().is_string()) {
        pe = ParseCompactPe(item.Str(), "pe" + std::to_string(out.size() + 1));
      } else {
        pe = ParseRepositoryRecord(item.value());
      }
      pe.Validate();
    } catch (const ParseError& e) {
      item.Fail(e.what());
    } catch (const PolicyError& e) {
      item.Fail(e.what());
    }
    if (!ids.insert(pe.id).second) item.Fail("duplicate policy id " + pe.id);
    out.push_back(std::move(pe));
  }
  return out;
}

DomainSpec ParseDomain(const Node& n, const std::filesystem::path& base_dir) {
  n.ExpectObject({"id", "subnet", "type", "label", "key", "controller",
                  "switches", "links", "hosts", "identities", "policies",
                  "policies_file", "defense", "costs", "table_capacity"});
  DomainSpec d;
  d.as.id = n.Required("id").Str();
  d.as.subnet = n.Required("subnet").Subnet();
  d.as.type = n.Str("type", "EDU");
  d.as.label = n.Has("label") ? n.Child("label").Label() : SecurityLabel(1);
  d.as.controller_id = n.Str("controller", "c-" + d.as.id);
  d.key = n.Str("key", "key-" + d.as.id);
  if (d.key.empty()) n.Child("key").Fail("must not be empty");

  std::set<std::string> switch_ids;
  for (const Node& s : n.Required("switches").Items()) {
    s.ExpectObject({"id", "label", "gateway"});
    SwitchSpec spec;
    spec.id = s.Required("id").Str();
    spec.label = s.Has("label") ? s.Child("label").Label() : SecurityLabel(1);
    spec.gateway = s.Has("gateway") && s.Child("gateway").Bool();
    if (!switch_ids.insert(spec.id).second) s.Fail("duplicate switch " + spec.id);
    d.switches.push_back(spec);
  }
  if (n.Has("links")) {
    for (const Node& l : n.Child("links").Items()) {
      auto link = l.Pair();
      for (const std::string& end : {link.first, link.second}) {
        if (!switch_ids.count(end)) l.Fail("undefined switch \"" + end + "\"");
      }
      if (link.first == link.second) l.Fail("self link");
      d.links.push_back(link);
    }
  }
  if (n.Has("hosts")) {
    for (const Node& h : n.Child("hosts").Items()) {
      h.ExpectObject({"id", "ip", "mac", "switch"});
      HostSpec host;
      host.id = h.Required("id").Str();
      host.ip = h.Required("ip").Ip();
      host.mac = h.Required("mac").Mac();
      host.switch_id = h.Required("switch").Str();
      if (!switch_ids.count(host.switch_id)) {
        h.Child("switch").Fail("undefined switch \"" + host.switch_id + "\"");
      }
      if (!d.as.subnet.Contains(host.ip)) {
        h.Child("ip").Fail("outside domain subnet " + d.as.subnet.ToString());
      }
      d.hosts.push_back(host);
    }
  }
  if (n.Has("identities")) {
    for (const Node& i : n.Child("identities").Items()) {
      i.ExpectObject({"mac", "user"});
      d.identities[i.Required("mac").Mac()] = i.Required("user").Str();
    }
  }
  if (n.Has("policies") && n.Has("policies_file")) {
    n.Fail("policies and policies_file are mutually exclusive");
  }
  if (n.Has("policies")) d.policies = ParsePolicies(n.Child("policies"));
  if (n.Has("policies_file")) {
    Node f = n.Child("policies_file");
    std::filesystem::path p = base_dir / f.Str();
    std::ifstream in(p);
    if (!in) f.Fail("cannot read " + p.string());
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      f.Fail(std::string("malformed JSON: ") + e.what());
    }
    d.policies = ParsePolicies(Node(doc, p.filename().string()));
  }
  if (n.Has("defense")) d.defense = ParseDefense(n.Child("defense"));
  if (n.Has("costs")) d.costs = ParseCosts(n.Child("costs"));
  d.table_capacity = static_cast<size_t>(n.Int("table_capacity", 1024, 1));
  return d;
}

FlowSpec ParseFlow(const Node& n) {
  n.ExpectObject({"id", "src", "dst", "proto", "sport", "dport", "type",
                  "signature", "start", "packets", "interval"});
  FlowSpec f;
  f.id = n.Required("id").Str();
  f.src_host = n.Required("src").Str();
  f.dst_ip = n.Required("dst").Ip();
  f.proto = n.Str("proto", "TCP");
  f.src_port = static_cast<uint16_t>(n.Int("sport", 0, 0));
  f.dst_port = static_cast<uint16_t>(n.Int("dport", 0, 0));
  if (n.Int("sport", 0) > 65535 || n.Int("dport", 0) > 65535) n.Fail("port > 65535");
  f.type = n.Str("type", "");
  if (n.Has("signature")) f.signature = n.Child("signature").Str();
  f.start = n.Int("start", 0, 0);
  f.packets = static_cast<int>(n.Int("packets", 1, 1));
  f.interval = n.Int("interval", 0, 0);
  return f;
}

BurstSpec ParseBurst(const Node& n) {
  n.ExpectObject({"id", "src", "dst", "proto", "dport", "type", "start",
                  "duration", "rate", "window"});
  BurstSpec b;
  b.id = n.Required("id").Str();
  b.src_host = n.Required("src").Str();
  b.dst_ip = n.Required("dst").Ip();
  b.proto = n.Str("proto", "TCP");
  b.dst_port = static_cast<uint16_t>(n.Int("dport", 0, 0));
  b.type = n.Str("type", "");
  b.start = n.Int("start", 0, 0);
  b.duration = n.Required("duration").Int(1);
  b.rate = n.Required("rate").Int(0);
  b.window = n.Int("window", 1000, 1);
  return b;
}

}  // namespace

const DomainSpec* Scenario::FindDomain(const std::string& id) const {
  for (const DomainSpec& d : domains) {
    if (d.as.id == id) return &d;
  }
  return nullptr;
}

const DomainSpec* Scenario::DomainOfHost(const std::string& host_id) const {
  for (const DomainSpec& d : domains) {
    for (const HostSpec& h : d.hosts) {
      if (h.id == host_id) return &d;
    }
  }
  return nullptr;
}

const HostSpec* Scenario::FindHost(const std::string& host_id) const {
  for (const DomainSpec& d : domains) {
    for (const HostSpec& h : d.hosts) {
      if (h.id == host_id) return &h;
    }
  }
  return nullptr;
}

Scenario ParseScenario(const json& raw, const std::filesystem::path& base_dir) {
  Node root(raw, "$");
  if (!raw.is_object()) root.Fail("expected an object");
  json expanded;
  const json* doc = &raw;
  if (raw.contains("generator") && !raw.contains("domains")) {
    try {
      expanded = GenerateScenarioDocument(raw);
    } catch (const std::invalid_argument& e) {
      root.Child("generator").Fail(e.what());
    }
    doc = &expanded;
  }
  Node n(*doc, "$");
  n.ExpectObject({"name", "description", "seed", "mode", "pbsa", "probe_ttl",
                  "timing", "domains", "as_links", "traffic", "bursts",
                  "generator", "series"});
  Scenario s;
  s.name = n.Required("name").Str();
  s.seed = static_cast<uint64_t>(n.Int("seed", 1, 0));
  std::string mode = n.Str("mode", "reactive");
  if (mode != "reactive" && mode != "proactive") {
    n.Child("mode").Fail("expected reactive or proactive");
  }
  s.proactive = mode == "proactive";
  s.pbsa = !n.Has("pbsa") || n.Child("pbsa").Bool();
  s.probe_ttl = static_cast<int>(n.Int("probe_ttl", 16, 1));
  if (n.Has("timing")) {
    Node t = n.Child("timing");
    t.ExpectObject({"link", "control", "queue_capacity", "horizon"});
    s.timing.link = t.Int("link", s.timing.link, 0);
    s.timing.control = t.Int("control", s.timing.control, 0);
    s.timing.queue_capacity = static_cast<size_t>(t.Int("queue_capacity", 0, 0));
    if (t.Has("horizon")) s.timing.horizon = t.Child("horizon").Int(0);
  }
  if (raw.contains("generator")) s.generator = raw.at("generator");

  std::set<std::string> as_ids, switch_ids, host_ids;
  std::set<Ipv4Address> host_ips;
  for (const Node& d : n.Required("domains").Items()) {
    DomainSpec spec = ParseDomain(d, base_dir);
    if (!as_ids.insert(spec.as.id).second) d.Fail("duplicate AS " + spec.as.id);
    for (const SwitchSpec& sw : spec.switches) {
      if (!switch_ids.insert(sw.id).second) {
        d.Fail("switch id " + sw.id + " used by two domains");
      }
    }
    for (const HostSpec& h : spec.hosts) {
      if (!host_ids.insert(h.id).second) d.Fail("duplicate host " + h.id);
      if (!host_ips.insert(h.ip).second) {
        d.Fail("duplicate host address " + h.ip.ToString());
      }
    }
    s.domains.push_back(std::move(spec));
  }
  if (s.domains.empty()) n.Child("domains").Fail("at least one domain needed");

  std::set<std::pair<std::string, std::string>> seen_links;
  if (n.Has("as_links")) {
    for (const Node& l : n.Child("as_links").Items()) {
      auto link = l.Pair();
      for (const std::string& end : {link.first, link.second}) {
        if (!as_ids.count(end)) l.Fail("undefined AS \"" + end + "\"");
      }
      if (link.first == link.second) l.Fail("self link");
      if (!seen_links.insert(std::minmax(link.first, link.second)).second) {
        l.Fail("duplicate AS link");
      }
      for (auto [a, b] : {link, std::pair(link.second, link.first)}) {
        std::string gw = GatewayName(a, b);
        const DomainSpec* dom = s.FindDomain(a);
        bool found = std::any_of(dom->switches.begin(), dom->switches.end(),
                                 [&](const SwitchSpec& sw) {
                                   return sw.id == gw && sw.gateway;
                                 });
        if (!found) l.Fail("undefined gateway switch \"" + gw + "\" in " + a);
      }
      s.as_links.push_back(link);
    }
  }

  if (n.Has("traffic")) {
    std::set<std::string> flow_ids;
    for (const Node& f : n.Child("traffic").Items()) {
      FlowSpec flow = ParseFlow(f);
      if (!host_ids.count(flow.src_host)) {
        f.Child("src").Fail("undefined host \"" + flow.src_host + "\"");
      }
      if (!flow_ids.insert(flow.id).second) f.Fail("duplicate flow id");
      s.flows.push_back(std::move(flow));
    }
  }
  if (n.Has("bursts")) {
    for (const Node& b : n.Child("bursts").Items()) {
      BurstSpec burst = ParseBurst(b);
      if (!host_ids.count(burst.src_host)) {
        b.Child("src").Fail("undefined host \"" + burst.src_host + "\"");
      }
      s.bursts.push_back(std::move(burst));
    }
  }
  return s;
}

json LoadScenarioDocument(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError(path.string() + ": malformed JSON: " + e.what());
  }
}

Scenario LoadScenario(const std::filesystem::path& path) {
  json doc = LoadScenarioDocument(path);
  try {
    return ParseScenario(doc, path.parent_path());
  } catch (const ScenarioError& e) {
    throw ScenarioError(path.filename().string() + " " + e.what());
  }
}

std::vector<FlowSpec> TrafficProgram(const Scenario& scenario) {
  std::vector<FlowSpec> out = scenario.flows;
  std::mt19937_64 rng(scenario.seed);
  std::uniform_int_distribution<int64_t> offset(0, 63999);
  for (const BurstSpec& b : scenario.bursts) {
    if (b.rate <= 0) continue;
    // Consecutive ports from a random offset keep every flow key distinct.
    int64_t first = offset(rng);
    int64_t total = b.duration * b.rate / b.window;
    for (int64_t j = 0; j < total; ++j) {
      FlowSpec f;
      f.id = b.id + "#" + std::to_string(j);
      f.src_host = b.src_host;
      f.dst_ip = b.dst_ip;
      f.proto = b.proto;
      f.src_port = static_cast<uint16_t>(1024 + (first + j) % 64000);
      f.dst_port = b.dst_port;
      f.type = b.type;
      f.start = b.start + j * b.window / b.rate;
      f.group = b.id;
      out.push_back(std::move(f));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const FlowSpec& a, const FlowSpec& b) {
    return a.start < b.start;
  });
  return out;
}

}  // namespace pbsa
