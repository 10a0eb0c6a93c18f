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


// Text renderings of run and sweep results. All formats are deterministic:
// equal inputs give byte-identical output.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbsa/harness/simulator.h"

namespace pbsa {

enum class EmitFormat { kTable, kDelimited, kRecords };

// Accepts "table", "delimited" or "records"; throws std::invalid_argument.
EmitFormat ParseEmitFormat(std::string_view name);

// Aggregates over the flows of one group ("" means every flow).
struct GroupSummary {
  std::string group;
  size_t flows = 0;
  size_t delivered = 0;
  size_t installed = 0;
  double mean_established_ticks = 0;  // over delivered flows
  int64_t max_established_ticks = 0;
};

struct RunSummary {
  uint64_t offered_packets = 0;
  uint64_t delivered_packets = 0;
  uint64_t dropped_packets = 0;
  uint64_t packet_ins = 0;
  double mean_latency_ticks = 0;  // controller queueing plus processing
  uint64_t flow_mods = 0;
  std::vector<GroupSummary> groups;  // "" first, then named groups sorted
};

RunSummary Summarize(const MetricsReport& report);

std::string Emit(const MetricsReport& report, EmitFormat format);

struct SweepPoint {
  std::string series;  // label from the document's "series" list, else ""
  std::string axis;
  int64_t value = 0;
  MetricsReport report;
};

std::string EmitSweep(const std::vector<SweepPoint>& points, EmitFormat format);

}  // namespace pbsa
