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


#include "pbsa/harness/report.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace pbsa {
namespace {

using Row = std::vector<std::string>;

std::string Fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string Join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string Opt(const std::optional<int64_t>& v) {
  return v ? std::to_string(*v) : "";
}

std::string CsvField(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Csv(const Row& header, const std::vector<Row>& rows) {
  std::string out;
  auto line = [&](const Row& r) {
    for (size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += CsvField(r[i]);
    }
    out += '\n';
  };
  line(header);
  for (const Row& r : rows) line(r);
  return out;
}

std::string Aligned(const Row& header, const std::vector<Row>& rows) {
  std::vector<size_t> width(header.size());
  for (size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const Row& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  auto line = [&](const Row& r) {
    std::string l;
    for (size_t i = 0; i < r.size(); ++i) {
      l += r[i];
      if (i + 1 < r.size()) l += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out += l + '\n';
  };
  line(header);
  for (const Row& r : rows) line(r);
  return out;
}

const Row kFlowHeader = {"scenario", "mode", "flow", "group", "src", "flow_key",
                         "start", "packets", "delivered", "outcome", "drop_domain",
                         "switch_path", "as_path", "install_tick",
                         "established_ticks"};

Row FlowRow(const MetricsReport& r, const FlowRecord& f) {
  return {r.scenario, r.mode, f.id, f.group, f.src_host, f.flow_key,
          std::to_string(f.start), std::to_string(f.packets),
          std::to_string(f.delivered), f.outcome, f.drop_domain,
          Join(f.switch_path, ';'), Join(f.as_path, ';'), Opt(f.install_tick),
          Opt(f.established_ticks)};
}

const Row kSweepHeader = {"series", "axis", "value", "group", "flows",
                          "delivered", "installed", "mean_established_ticks",
                          "max_established_ticks", "offered_packets",
                          "delivered_packets", "dropped_packets", "packet_ins",
                          "mean_latency_ticks", "flow_mods"};

std::vector<Row> SweepRows(const SweepPoint& p) {
  RunSummary s = Summarize(p.report);
  std::vector<Row> rows;
  for (const GroupSummary& g : s.groups) {
    rows.push_back({p.series, p.axis, std::to_string(p.value),
                    g.group.empty() ? "all" : g.group, std::to_string(g.flows),
                    std::to_string(g.delivered), std::to_string(g.installed),
                    Fixed(g.mean_established_ticks),
                    std::to_string(g.max_established_ticks),
                    std::to_string(s.offered_packets),
                    std::to_string(s.delivered_packets),
                    std::to_string(s.dropped_packets),
                    std::to_string(s.packet_ins), Fixed(s.mean_latency_ticks),
                    std::to_string(s.flow_mods)});
  }
  return rows;
}

nlohmann::json RowObject(const Row& header, const Row& row) {
  nlohmann::json o = nlohmann::json::object();
  for (size_t i = 0; i < header.size(); ++i) o[header[i]] = row[i];
  return o;
}

GroupSummary SummarizeGroup(const std::string& group,
                            const std::vector<const FlowRecord*>& flows) {
  GroupSummary g;
  g.group = group;
  g.flows = flows.size();
  int64_t total = 0;
  for (const FlowRecord* f : flows) {
    if (f->install_tick) ++g.installed;
    if (f->outcome != "DELIVERED") continue;
    ++g.delivered;
    int64_t t = f->established_ticks.value_or(0);
    total += t;
    g.max_established_ticks = std::max(g.max_established_ticks, t);
  }
  if (g.delivered) g.mean_established_ticks = double(total) / double(g.delivered);
  return g;
}

std::string RunTable(const MetricsReport& r) {
  std::string out = "scenario " + r.scenario + "  mode " + r.mode + "  seed " +
                    std::to_string(r.seed) + "  pbsa " + (r.pbsa ? "on" : "off") + "\n";
  RunSummary s = Summarize(r);
  out += "offered " + std::to_string(s.offered_packets) + "  delivered " +
         std::to_string(s.delivered_packets) + "  dropped " +
         std::to_string(s.dropped_packets) + "  packet_ins " +
         std::to_string(s.packet_ins) + "  mean_latency_ticks " +
         Fixed(s.mean_latency_ticks) + "  flow_mods " + std::to_string(s.flow_mods) +
         "  end_tick " + std::to_string(r.end_tick) + "\n";
  std::vector<std::string> drops;
  for (const auto& [reason, n] : r.drops) drops.push_back(reason + "=" + std::to_string(n));
  out += "drops " + (drops.empty() ? std::string("none") : Join(drops, ' ')) + "\n";
  if (!r.blocks.empty()) {
    std::vector<std::string> blocks;
    for (const auto& [ip, t] : r.blocks) blocks.push_back(ip + "@" + std::to_string(t));
    out += "blocks " + Join(blocks, ' ') + "\n";
  }
  if (r.flows.empty()) return out;
  out += "\n";
  std::vector<Row> rows;
  for (const FlowRecord& f : r.flows) {
    rows.push_back({f.id, f.outcome, f.drop_domain, std::to_string(f.delivered) + "/" +
                    std::to_string(f.packets), Opt(f.established_ticks),
                    Join(f.as_path, ','), Join(f.switch_path, ',')});
  }
  return out + Aligned({"flow", "outcome", "drop_domain", "packets",
                        "established", "as_path", "switch_path"}, rows);
}

std::string RunRecords(const MetricsReport& r) {
  using nlohmann::json;
  std::string out;
  json run = {{"record", "run"},
              {"scenario", r.scenario},
              {"mode", r.mode},
              {"seed", r.seed},
              {"pbsa", r.pbsa},
              {"offered_packets", r.offered_packets},
              {"delivered_packets", r.delivered_packets},
              {"drops", r.drops},
              {"flow_mods", r.flow_mods},
              {"blocks", r.blocks},
              {"end_tick", r.end_tick}};
  out += run.dump() + "\n";
  for (const FlowRecord& f : r.flows) {
    json o = {{"record", "flow"},
              {"id", f.id},
              {"group", f.group},
              {"src", f.src_host},
              {"flow_key", f.flow_key},
              {"start", f.start},
              {"packets", f.packets},
              {"delivered", f.delivered},
              {"outcome", f.outcome},
              {"drop_domain", f.drop_domain},
              {"switch_path", f.switch_path},
              {"as_path", f.as_path},
              {"handle_visited", f.handle_visited},
              {"install_tick", f.install_tick ? json(*f.install_tick) : json()},
              {"established_ticks",
               f.established_ticks ? json(*f.established_ticks) : json()}};
    out += o.dump() + "\n";
  }
  for (const PacketInRecord& p : r.packet_ins) {
    json o = {{"record", "packet_in"},
              {"tick", p.tick},
              {"as", p.as_id},
              {"switch", p.switch_id},
              {"flow", p.flow_id},
              {"matched_pe", p.matched_pe},
              {"allowed", p.allowed},
              {"reason", p.reason},
              {"detail", p.detail},
              {"defense", p.defense},
              {"rules", p.rules},
              {"cost_ticks", p.cost_ticks},
              {"latency_ticks", p.latency_ticks}};
    out += o.dump() + "\n";
  }
  return out;
}

}  // namespace

EmitFormat ParseEmitFormat(std::string_view name) {
  if (name == "table") return EmitFormat::kTable;
  if (name == "delimited") return EmitFormat::kDelimited;
  if (name == "records") return EmitFormat::kRecords;
  throw std::invalid_argument("unknown emit format \"" + std::string(name) + "\"");
}

RunSummary Summarize(const MetricsReport& report) {
  RunSummary s;
  s.offered_packets = report.offered_packets;
  s.delivered_packets = report.delivered_packets;
  s.dropped_packets = report.DroppedPackets();
  s.packet_ins = report.packet_ins.size();
  s.flow_mods = report.flow_mods;
  int64_t latency = 0;
  for (const PacketInRecord& p : report.packet_ins) latency += p.latency_ticks;
  if (s.packet_ins) s.mean_latency_ticks = double(latency) / double(s.packet_ins);

  std::vector<const FlowRecord*> all;
  std::map<std::string, std::vector<const FlowRecord*>> by_group;
  for (const FlowRecord& f : report.flows) {
    all.push_back(&f);
    if (!f.group.empty()) by_group[f.group].push_back(&f);
  }
  s.groups.push_back(SummarizeGroup("", all));
  for (const auto& [g, flows] : by_group) s.groups.push_back(SummarizeGroup(g, flows));
  return s;
}

std::string Emit(const MetricsReport& report, EmitFormat format) {
  switch (format) {
    case EmitFormat::kTable:
      return RunTable(report);
    case EmitFormat::kDelimited: {
      std::vector<Row> rows;
      for (const FlowRecord& f : report.flows) rows.push_back(FlowRow(report, f));
      return Csv(kFlowHeader, rows);
    }
    case EmitFormat::kRecords:
      return RunRecords(report);
  }
  return {};
}

std::string EmitSweep(const std::vector<SweepPoint>& points, EmitFormat format) {
  std::vector<Row> rows;
  for (const SweepPoint& p : points) {
    for (Row& r : SweepRows(p)) rows.push_back(std::move(r));
  }
  switch (format) {
    case EmitFormat::kTable:
      return Aligned(kSweepHeader, rows);
    case EmitFormat::kDelimited:
      return Csv(kSweepHeader, rows);
    case EmitFormat::kRecords: {
      std::string out;
      for (const Row& r : rows) out += RowObject(kSweepHeader, r).dump() + "\n";
      return out;
    }
  }
  return {};
}

}  // namespace pbsa
