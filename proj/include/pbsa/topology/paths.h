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

#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbsa/policy/label.h"
#include "pbsa/topology/graph.h"
#include "pbsa/topology/repository.h"

namespace pbsa {

using AsPath = std::vector<std::string>;
using SwitchPath = std::vector<std::string>;

class NoPathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All simple AS paths src..dst over the repository's learned links whose
// transit members satisfy `range`, shortest first, then lexicographic.
// ASes in `avoid` are never entered.
std::vector<AsPath> FindAsPaths(const TopologyRepository& repo,
                                const std::string& src, const std::string& dst,
                                const LabelRange& range,
                                const std::set<std::string>& avoid = {});

inline std::vector<AsPath> FindAsPaths(const TopologyRepository& repo,
                                       const std::string& src,
                                       const std::string& dst,
                                       const LabelConstraint& c) {
  return FindAsPaths(repo, src, dst, LabelRange::From(c));
}

// Shortest switch path whose non-gateway members satisfy `range`. Among
// equal-length candidates each step prefers a neighbor whose label is not
// below the current switch, then the smaller id. With `required`, the path
// is validated and returned as given. Throws NoPathError.
SwitchPath FindSwitchPath(const IntraGraph& graph, const std::string& ingress,
                          const std::string& egress,
                          const std::optional<SwitchPath>& required,
                          const LabelRange& range);

}  // namespace pbsa
