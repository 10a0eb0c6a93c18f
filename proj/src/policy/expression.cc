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

#include "pbsa/policy/expression.h"

#include <algorithm>

#include "pbsa/policy/error.h"
#include "pbsa/policy/text_util.h"

namespace pbsa {
namespace {

bool MatchCondition(const Constraint& c, const FlowContext& ctx) {
  switch (c.kind) {
    case Constraint::Kind::kPacketAttr:
      if (c.key == "type") return text::Lower(c.value) == text::Lower(ctx.packet_type);
      if (c.key == "proto") return text::Lower(c.value) == text::Lower(ctx.ip_proto);
      if (c.key == "port") return c.value == std::to_string(ctx.service_port);
      return false;
    case Constraint::Kind::kSignature:
      return ctx.signature && *ctx.signature == c.value;
    default:
      return true;
  }
}

bool MatchConditions(const std::vector<Constraint>& cons,
                     const FlowContext& ctx) {
  return std::all_of(cons.begin(), cons.end(), [&](const Constraint& c) {
    return MatchCondition(c, ctx);
  });
}

// Shared AS-domain part of both selectors.
bool MatchAs(const EndpointSelector& sel, const std::optional<AsInfo>& as) {
  if (sel.as_id && (!as || as->id != *sel.as_id)) return false;
  if (sel.as_type && (!as || as->type != *sel.as_type)) return false;
  if (!sel.label_req.is_any() &&
      (!as || !sel.label_req.SatisfiedBy(as->label))) {
    return false;
  }
  return true;
}

bool MatchSource(const EndpointSelector& sel, const FlowContext& ctx) {
  if (!MatchAs(sel, ctx.src_as)) return false;
  if (sel.subnet && !sel.subnet->Contains(ctx.src_ip)) return false;
  if (sel.gateway && ctx.ingress_gateway != sel.gateway) return false;
  if (sel.host_ip && *sel.host_ip != ctx.src_ip) return false;
  if (sel.host_mac && *sel.host_mac != ctx.src_mac) return false;
  return true;
}

// The destination gateway is an exit obligation, not a condition.
bool MatchDest(const EndpointSelector& sel, const FlowContext& ctx) {
  if (!MatchAs(sel, ctx.dst_as)) return false;
  if (sel.subnet && !sel.subnet->Contains(ctx.dst_ip)) return false;
  if (sel.host_ip && *sel.host_ip != ctx.dst_ip) return false;
  if (sel.host_mac && *sel.host_mac != ctx.dst_mac) return false;
  return true;
}

}  // namespace

int EndpointSelector::Specificity() const {
  return int{as_id.has_value()} + int{subnet.has_value()} +
         int{as_type.has_value()} + int{!label_req.is_any()} +
         int{gateway.has_value()} + int{host_ip.has_value()} +
         int{host_mac.has_value()};
}

bool ServiceSet::Contains(uint16_t port) const {
  return std::any_of(ranges.begin(), ranges.end(), [port](const PortRange& r) {
    return r.lo <= port && port <= r.hi;
  });
}

std::string SecProfile::ToString() const {
  if (conf && intg) return "conf,intg";
  if (conf) return "conf";
  if (intg) return "intg";
  return "none";
}

void PolicyExpression::Validate() const {
  if (id.empty()) throw PolicyError("policy expression id is empty");
  if (validity && validity->start > validity->end) {
    throw PolicyError("policy " + id + ": validity start after end");
  }
  if (path && path->hops.empty()) {
    throw PolicyError("policy " + id + ": empty path");
  }
  if (services) {
    for (const PortRange& r : services->ranges) {
      if (r.lo > r.hi) {
        throw PolicyError("policy " + id + ": inverted port range");
      }
    }
  }
  for (const auto* list : {&flow_cons, &dom_cons}) {
    for (const Constraint& c : *list) {
      if (c.kind == Constraint::Kind::kRateThreshold && c.rate <= 0) {
        throw PolicyError("policy " + id + ": rate threshold must be > 0");
      }
    }
  }
  if (action_exit && dest.gateway && *action_exit != *dest.gateway) {
    throw PolicyError("policy " + id + ": conflicting exit switches");
  }
}

int PolicyExpression::Specificity() const {
  return int{flow_id.has_value()} + source.Specificity() +
         dest.Specificity() + int{user.has_value()} +
         int{!flow_cons.empty()} + int{!dom_cons.empty()} +
         int{services.has_value()} + int{sec_profile.has_value()} +
         int{path.has_value()} + int{validity.has_value()};
}

bool ConditionHolds(const Constraint& c, const FlowContext& ctx) {
  return MatchCondition(c, ctx);
}

bool MatchPe(const PolicyExpression& pe, const FlowContext& ctx) {
  if (pe.flow_id && *pe.flow_id != ctx.flow_id) return false;
  if (!MatchSource(pe.source, ctx)) return false;
  if (!MatchDest(pe.dest, ctx)) return false;
  if (pe.user && ctx.user != pe.user) return false;
  if (!MatchConditions(pe.flow_cons, ctx)) return false;
  if (!MatchConditions(pe.dom_cons, ctx)) return false;
  if (pe.services && !pe.services->Contains(ctx.service_port)) return false;
  if (pe.path && pe.path->kind == PathKind::kAs &&
      pe.path->hops != ctx.traversed_path) {
    return false;
  }
  if (pe.validity && !pe.validity->Contains(ctx.timestamp)) return false;
  return true;
}

std::optional<LabelRange> CollectLabelRange(std::span<const Constraint> cons) {
  std::optional<LabelRange> range;
  for (const Constraint& c : cons) {
    if (c.kind != Constraint::Kind::kLabelPath) continue;
    LabelRange r = LabelRange::From(c.label);
    range = range ? range->Intersect(r) : r;
  }
  return range;
}

Decision SelectPolicy(std::span<const PolicyExpression> pes,
                      const FlowContext& ctx) {
  const PolicyExpression* best = nullptr;
  const PolicyExpression* deny = nullptr;
  for (const PolicyExpression& pe : pes) {
    if (!MatchPe(pe, ctx)) continue;
    if (pe.action == PolicyAction::kDeny) {
      if (!deny || pe.id < deny->id) deny = &pe;
      continue;
    }
    if (!best) {
      best = &pe;
      continue;
    }
    int s = pe.Specificity();
    int b = best->Specificity();
    if (s > b || (s == b && pe.id < best->id)) best = &pe;
  }

  Decision d;
  if (deny) {
    d.matched_pe = deny->id;
    return d;
  }
  if (!best) return d;

  d.verdict = Verdict::kAllow;
  d.matched_pe = best->id;
  if (best->path && best->path->kind == PathKind::kSwitch) {
    d.path_obligation = best->path->hops;
  }
  std::vector<Constraint> all = best->flow_cons;
  all.insert(all.end(), best->dom_cons.begin(), best->dom_cons.end());
  d.label_obligation = CollectLabelRange(all);
  for (const Constraint& c : all) {
    if (c.kind == Constraint::Kind::kRateThreshold) {
      d.rate_limit = d.rate_limit ? std::min(*d.rate_limit, c.rate) : c.rate;
    }
  }
  d.exit_obligation = best->action_exit ? best->action_exit : best->dest.gateway;
  for (const Constraint& c : best->flow_cons) {
    if (c.flow_scoped()) d.ptt_constraints.push_back(c);
  }
  d.sec_profile = best->sec_profile;
  return d;
}

}  // namespace pbsa
