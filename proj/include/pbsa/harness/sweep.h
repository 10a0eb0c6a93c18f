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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbsa/harness/report.h"

namespace pbsa {

// Axes map onto generator parameters: pe_count, switch_count, as_count and
// request_rate (the flood generator calls the last one "rate").
bool IsSweepAxis(const std::string& axis);

struct SweepOptions {
  std::optional<bool> proactive;
  std::optional<uint64_t> seed;
};

// One run per (series, point). The document must carry a generator block;
// each entry of its optional "series" list ({"label", "set"}) overrides
// generator parameters for one labeled series. Throws ScenarioError when
// the axis does not apply.
std::vector<SweepPoint> Sweep(const nlohmann::json& doc,
                              const std::filesystem::path& base_dir,
                              const std::string& axis,
                              const std::vector<int64_t>& points,
                              const SweepOptions& options = {});

// Mean wall-clock microseconds per run over `repetitions` runs.
double WallclockMicros(const Scenario& scenario, int repetitions = 10);

}  // namespace pbsa
