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

#include "pbsa/topology/paths.h"

#include <algorithm>
#include <deque>
#include <map>

namespace pbsa {
namespace {

void Extend(const TopologyRepository& repo,
            const std::map<std::string, std::set<std::string>>& adj,
            const std::string& dst, const LabelRange& range,
            const std::set<std::string>& avoid, AsPath& path,
            std::set<std::string>& on_path, std::vector<AsPath>& out) {
  const std::string& at = path.back();
  if (at == dst) {
    out.push_back(path);
    return;
  }
  auto it = adj.find(at);
  if (it == adj.end()) return;
  for (const std::string& next : it->second) {
    if (on_path.count(next) || avoid.count(next)) continue;
    if (next != dst) {
      auto label = repo.LabelOf(next);
      if (!label || !range.SatisfiedBy(*label)) continue;
    }
    path.push_back(next);
    on_path.insert(next);
    Extend(repo, adj, dst, range, avoid, path, on_path, out);
    on_path.erase(next);
    path.pop_back();
  }
}

bool Allowed(const IntraGraph& g, const std::string& id,
             const LabelRange& range) {
  const IntraGraph::Node& n = g.node(id);
  return n.gateway || range.SatisfiedBy(n.label);
}

}  // namespace

std::vector<AsPath> FindAsPaths(const TopologyRepository& repo,
                                const std::string& src, const std::string& dst,
                                const LabelRange& range,
                                const std::set<std::string>& avoid) {
  std::vector<AsPath> out;
  if (src == dst || !repo.Knows(src) || !repo.Knows(dst)) return out;
  std::map<std::string, std::set<std::string>> adj;
  for (const auto& [a, b] : repo.links) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  AsPath path = {src};
  std::set<std::string> on_path = {src};
  Extend(repo, adj, dst, range, avoid, path, on_path, out);
  std::sort(out.begin(), out.end(), [](const AsPath& a, const AsPath& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

SwitchPath FindSwitchPath(const IntraGraph& graph, const std::string& ingress,
                          const std::string& egress,
                          const std::optional<SwitchPath>& required,
                          const LabelRange& range) {
  for (const std::string& end : {ingress, egress}) {
    if (!graph.Contains(end)) throw NoPathError("unknown switch " + end);
  }
  if (required) {
    const SwitchPath& p = *required;
    if (p.empty() || p.front() != ingress || p.back() != egress) {
      throw NoPathError("required path does not run " + ingress + " to " +
                        egress);
    }
    std::set<std::string> seen;
    for (size_t i = 0; i < p.size(); ++i) {
      if (!graph.Contains(p[i])) throw NoPathError("unknown switch " + p[i]);
      if (!seen.insert(p[i]).second) {
        throw NoPathError("required path repeats " + p[i]);
      }
      if (!Allowed(graph, p[i], range)) {
        throw NoPathError(p[i] + " violates label range " + range.ToString());
      }
      if (i > 0 && !graph.Adjacent(p[i - 1], p[i])) {
        throw NoPathError("no link " + p[i - 1] + "-" + p[i]);
      }
    }
    return p;
  }

  if (!Allowed(graph, ingress, range) || !Allowed(graph, egress, range)) {
    throw NoPathError("endpoint violates label range " + range.ToString());
  }
  // Distances to the egress over allowed switches.
  std::map<std::string, int> dist = {{egress, 0}};
  std::deque<std::string> queue = {egress};
  while (!queue.empty()) {
    std::string at = queue.front();
    queue.pop_front();
    for (const std::string& n : graph.neighbors(at)) {
      if (dist.count(n) || !Allowed(graph, n, range)) continue;
      dist[n] = dist[at] + 1;
      queue.push_back(n);
    }
  }
  if (!dist.count(ingress)) {
    throw NoPathError("no path " + ingress + " to " + egress +
                      " within label range " + range.ToString());
  }

  SwitchPath path = {ingress};
  while (path.back() != egress) {
    const std::string& at = path.back();
    int want = dist[at] - 1;
    const std::string* pick = nullptr;
    bool pick_ordered = false;
    for (const std::string& n : graph.neighbors(at)) {
      auto d = dist.find(n);
      if (d == dist.end() || d->second != want) continue;
      bool ordered = graph.node(at).label <= graph.node(n).label;
      if (!pick || (ordered && !pick_ordered)) {
        pick = &n;
        pick_ordered = ordered;
      }
    }
    path.push_back(*pick);
  }
  return path;
}

}  // namespace pbsa
