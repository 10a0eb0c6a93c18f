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

#include "pbsa/interdomain/exchange.h"

#include <algorithm>
#include <charconv>
#include <set>

#include "pbsa/policy/error.h"

namespace pbsa {

bool ValidateHandle(const Handle& handle, const std::string& self_as,
                    const Keyring& keys, const TopologyRepository& topo) {
  if (handle.visited.empty()) return false;
  std::set<std::string> seen(handle.visited.begin(), handle.visited.end());
  if (seen.size() != handle.visited.size() || seen.count(self_as)) {
    return false;
  }
  if (!topo.Neighbors(self_as).count(handle.visited.back())) return false;
  return VerifyHandleTag(handle, keys);
}

std::vector<Constraint> LabelRangeConstraints(const LabelRange& range) {
  std::vector<Constraint> out;
  if (range.hi && range.lo == *range.hi) {
    out.push_back(Constraint::LabelPath(LabelConstraint::Exactly(range.lo)));
    return out;
  }
  if (range.lo > 1) {
    out.push_back(Constraint::LabelPath(LabelConstraint::AtLeast(range.lo)));
  }
  if (range.hi && *range.hi >= 1) {
    out.push_back(Constraint::LabelPath(LabelConstraint::AtMost(*range.hi)));
  }
  return out;
}

MergedConstraints MergeConstraints(const std::vector<Constraint>& local,
                                   const std::vector<Constraint>& remote) {
  MergedConstraints out;
  std::optional<LabelRange> labels;
  std::optional<int64_t> rate;
  std::vector<Constraint> rest;
  for (const auto* list : {&local, &remote}) {
    for (const Constraint& c : *list) {
      switch (c.kind) {
        case Constraint::Kind::kLabelPath: {
          LabelRange r = LabelRange::From(c.label);
          labels = labels ? labels->Intersect(r) : r;
          break;
        }
        case Constraint::Kind::kRateThreshold:
          rate = rate ? std::min(*rate, c.rate) : c.rate;
          break;
        default:
          if (std::find(rest.begin(), rest.end(), c) == rest.end()) {
            rest.push_back(c);
          }
      }
    }
  }
  // Two different required values for one packet attribute never hold.
  for (size_t i = 0; i < rest.size(); ++i) {
    for (size_t j = i + 1; j < rest.size(); ++j) {
      if (rest[i].kind == Constraint::Kind::kPacketAttr &&
          rest[j].kind == Constraint::Kind::kPacketAttr &&
          rest[i].key == rest[j].key && rest[i].value != rest[j].value) {
        out.satisfiable = false;
      }
    }
  }
  if (labels) {
    if (!labels->Satisfiable()) {
      out.satisfiable = false;
      // Keep the contradiction visible instead of silently dropping it.
      out.constraints.push_back(
          Constraint::LabelPath(LabelConstraint::AtLeast(labels->lo)));
      out.constraints.push_back(
          Constraint::LabelPath(LabelConstraint::AtMost(*labels->hi)));
    } else {
      out.constraints = LabelRangeConstraints(*labels);
    }
  }
  if (rate) out.constraints.push_back(Constraint::RateThreshold(*rate));
  out.constraints.insert(out.constraints.end(), rest.begin(), rest.end());
  return out;
}

namespace {

std::string JoinIds(const std::vector<std::string>& ids) {
  std::string s;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ',';
    s += ids[i];
  }
  return s;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool AtEnd() const { return pos_ >= text_.size(); }

  std::optional<std::string_view> PeekKey() const {
    if (AtEnd()) return std::nullopt;
    std::string_view line = CurrentLine();
    return line.substr(0, line.find(' '));
  }

  std::string Expect(std::string_view key) {
    if (AtEnd()) Fail("missing line \"" + std::string(key) + "\"");
    std::string_view line = CurrentLine();
    size_t sp = line.find(' ');
    if (line.substr(0, sp) != key) {
      Fail("expected \"" + std::string(key) + "\", found \"" +
           std::string(line) + "\"");
    }
    std::string value =
        sp == std::string_view::npos ? "" : std::string(line.substr(sp + 1));
    Advance();
    return value;
  }

  void ExpectExact(std::string_view line) {
    if (AtEnd() || CurrentLine() != line) {
      Fail("expected \"" + std::string(line) + "\"");
    }
    Advance();
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw WireFormatError("augmented packet line " + std::to_string(line_no_) +
                          ": " + what);
  }

 private:
  std::string_view CurrentLine() const {
    size_t nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) Fail("missing final newline");
    return text_.substr(pos_, nl - pos_);
  }
  void Advance() {
    pos_ = text_.find('\n', pos_) + 1;
    ++line_no_;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_no_ = 1;
};

template <typename T>
T ParseNumber(LineReader& in, const std::string& key, const std::string& v) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    in.Fail(key + ": bad number \"" + v + "\"");
  }
  return out;
}

std::vector<std::string> SplitIds(LineReader& in, const std::string& v) {
  std::vector<std::string> ids;
  size_t start = 0;
  while (start <= v.size()) {
    size_t comma = v.find(',', start);
    if (comma == std::string::npos) comma = v.size();
    std::string id = v.substr(start, comma - start);
    if (id.empty()) in.Fail("empty AS id in \"" + v + "\"");
    ids.push_back(id);
    start = comma + 1;
  }
  return ids;
}

}  // namespace

std::string SerializeAugmented(const AugmentedPacket& aug) {
  const Packet& p = aug.packet;
  std::string s = "PBSA-AUG/1\n";
  auto line = [&s](std::string_view key, const std::string& value) {
    s.append(key).append(" ").append(value).append("\n");
  };
  line("packet.src", p.src_ip.ToString());
  line("packet.dst", p.dst_ip.ToString());
  line("packet.src_mac", p.src_mac.ToString());
  line("packet.dst_mac", p.dst_mac.ToString());
  line("packet.proto", p.ip_proto);
  line("packet.sport", std::to_string(p.src_port));
  line("packet.dport", std::to_string(p.dst_port));
  line("packet.type", p.packet_type);
  if (p.signature) line("packet.sig", *p.signature);
  line("packet.size", std::to_string(p.size));
  line("packet.ts", std::to_string(p.timestamp));
  line("handle.flow", aug.handle.flow_id);
  line("handle.origin", aug.handle.origin_as);
  line("handle.visited", JoinIds(aug.handle.visited));
  line("handle.tag", aug.handle.tag);
  if (aug.ptt) {
    line("ptt.flow", aug.ptt->flow_id);
    line("ptt.origin", aug.ptt->origin_as);
    line("ptt.issuer", aug.ptt->issuer_as);
    line("ptt.constraints", FormatConstraintList(aug.ptt->constraints));
    line("ptt.tag", aug.ptt->tag);
  }
  s += "end\n";
  return s;
}

AugmentedPacket DeserializeAugmented(std::string_view text) {
  LineReader in(text);
  in.ExpectExact("PBSA-AUG/1");
  AugmentedPacket aug;
  Packet& p = aug.packet;
  auto ip = [&in](const std::string& key) {
    std::string v = in.Expect(key);
    auto a = Ipv4Address::Parse(v);
    if (!a || a->ToString() != v) in.Fail(key + ": bad address \"" + v + "\"");
    return *a;
  };
  auto mac = [&in](const std::string& key) {
    std::string v = in.Expect(key);
    auto m = MacAddress::Parse(v);
    if (!m || m->ToString() != v) in.Fail(key + ": bad MAC \"" + v + "\"");
    return *m;
  };
  p.src_ip = ip("packet.src");
  p.dst_ip = ip("packet.dst");
  p.src_mac = mac("packet.src_mac");
  p.dst_mac = mac("packet.dst_mac");
  p.ip_proto = in.Expect("packet.proto");
  p.src_port = ParseNumber<uint16_t>(in, "packet.sport", in.Expect("packet.sport"));
  p.dst_port = ParseNumber<uint16_t>(in, "packet.dport", in.Expect("packet.dport"));
  p.packet_type = in.Expect("packet.type");
  if (in.PeekKey() == "packet.sig") p.signature = in.Expect("packet.sig");
  p.size = ParseNumber<uint32_t>(in, "packet.size", in.Expect("packet.size"));
  p.timestamp = ParseNumber<int64_t>(in, "packet.ts", in.Expect("packet.ts"));

  aug.handle.flow_id = in.Expect("handle.flow");
  aug.handle.origin_as = in.Expect("handle.origin");
  aug.handle.visited = SplitIds(in, in.Expect("handle.visited"));
  aug.handle.tag = in.Expect("handle.tag");
  if (in.PeekKey() == "ptt.flow") {
    PolicyTransferToken t;
    t.flow_id = in.Expect("ptt.flow");
    t.origin_as = in.Expect("ptt.origin");
    t.issuer_as = in.Expect("ptt.issuer");
    std::string cons = in.Expect("ptt.constraints");
    try {
      t.constraints = ParseConstraintList(cons);
    } catch (const ParseError& e) {
      in.Fail(std::string("ptt.constraints: ") + e.what());
    }
    for (const Constraint& c : t.constraints) {
      if (!c.flow_scoped()) in.Fail("ptt.constraints: not flow-scoped");
    }
    t.tag = in.Expect("ptt.tag");
    aug.ptt = std::move(t);
  }
  in.ExpectExact("end");
  if (!in.AtEnd()) in.Fail("trailing data");
  if (aug.handle.flow_id != FlowKey(p)) {
    in.Fail("handle.flow does not match the packet");
  }
  return aug;
}

}  // namespace pbsa
