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


// Single-field mutations of a genuine handle.

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "pbsa/interdomain/token.h"

namespace pbsa::testing {

inline std::string FlipBit(const std::string& hex, size_t bit) {
  std::string out = hex;
  size_t nibble = bit / 4;
  int v = std::stoi(out.substr(nibble, 1), nullptr, 16) ^ (1 << (bit % 4));
  out[nibble] = "0123456789abcdef"[v];
  return out;
}

inline std::vector<Handle> HandleMutants(const Handle& good) {
  std::vector<Handle> mutants;

  std::vector<std::string> perm = good.visited;
  std::sort(perm.begin(), perm.end());
  do {
    if (perm != good.visited) {
      Handle m = good;
      m.visited = perm;
      mutants.push_back(m);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  for (size_t i = 0; i <= good.visited.size(); ++i) {
    for (const std::string& extra : {"AS5", "AS9"}) {
      Handle m = good;
      m.visited.insert(m.visited.begin() + static_cast<long>(i), extra);
      mutants.push_back(m);
    }
  }
  for (size_t i = 0; i < good.visited.size(); ++i) {
    Handle removed = good;
    removed.visited.erase(removed.visited.begin() + static_cast<long>(i));
    mutants.push_back(removed);
    for (const std::string& other : {"AS5", "AS6", "as3"}) {
      Handle changed = good;
      changed.visited[i] = other;
      mutants.push_back(changed);
    }
  }
  for (const std::string& origin : {"AS2", "AS5", ""}) {
    Handle m = good;
    m.origin_as = origin;
    mutants.push_back(m);
  }
  for (const std::string& flow : {"f2", "", "f1 "}) {
    Handle m = good;
    m.flow_id = flow;
    mutants.push_back(m);
  }
  for (size_t bit = 0; bit < good.tag.size() * 4; ++bit) {
    Handle m = good;
    m.tag = FlipBit(good.tag, bit);
    mutants.push_back(m);
  }
  Handle truncated = good;
  truncated.tag.pop_back();
  mutants.push_back(truncated);

  return mutants;
}

}  // namespace pbsa::testing
