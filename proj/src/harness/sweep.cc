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


#include "pbsa/harness/sweep.h"

#include <chrono>
#include <future>

#include "pbsa/harness/scenario.h"
#include "pbsa/harness/simulator.h"

namespace pbsa {
namespace {

using nlohmann::json;

std::string ParamFor(const std::string& kind, const std::string& axis) {
  if (kind == "flood") {
    if (axis == "request_rate") return "rate";
    throw ScenarioError("axis " + axis + " does not apply to generator kind flood");
  }
  if (kind == "chain") return axis;
  throw ScenarioError("axis " + axis + " does not apply to generator kind " + kind);
}

}  // namespace

bool IsSweepAxis(const std::string& axis) {
  return axis == "pe_count" || axis == "switch_count" || axis == "as_count" ||
         axis == "request_rate";
}

std::vector<SweepPoint> Sweep(const json& doc, const std::filesystem::path& base_dir,
                              const std::string& axis,
                              const std::vector<int64_t>& points,
                              const SweepOptions& options) {
  if (!IsSweepAxis(axis)) throw ScenarioError("unknown sweep axis \"" + axis + "\"");
  if (!doc.is_object() || !doc.contains("generator") || doc.contains("domains")) {
    throw ScenarioError("sweep needs a scenario with a generator block");
  }
  const json& gen = doc.at("generator");
  std::string param = ParamFor(gen.value("kind", ""), axis);

  json series = doc.value("series", json::array({{{"label", ""}}}));
  if (!series.is_array() || series.empty()) {
    throw ScenarioError("series: expected a non-empty array");
  }

  struct Job {
    std::string label;
    int64_t value;
    Scenario scenario;
  };
  std::vector<Job> jobs;
  for (size_t i = 0; i < series.size(); ++i) {
    const json& entry = series[i];
    if (!entry.is_object()) {
      throw ScenarioError("series[" + std::to_string(i) + "]: expected an object");
    }
    for (const auto& [key, v] : entry.items()) {
      if (key != "label" && key != "set") {
        throw ScenarioError("series[" + std::to_string(i) + "]." + key + ": unknown field");
      }
    }
    for (int64_t value : points) {
      json d = doc;
      d.erase("series");
      json& g = d["generator"];
      if (entry.contains("set")) {
        if (!entry.at("set").is_object()) {
          throw ScenarioError("series[" + std::to_string(i) + "].set: expected an object");
        }
        for (const auto& [k, v] : entry.at("set").items()) g[k] = v;
      }
      g[param] = value;
      Scenario s = ParseScenario(d, base_dir);
      if (options.proactive) s.proactive = *options.proactive;
      if (options.seed) s.seed = *options.seed;
      jobs.push_back({entry.value("label", ""), value, std::move(s)});
    }
  }

  // Each run owns its world, so points run concurrently.
  std::vector<std::future<MetricsReport>> futures;
  for (const Job& job : jobs) {
    futures.push_back(std::async(std::launch::async,
                                 [&job] { return Run(job.scenario); }));
  }
  std::vector<SweepPoint> out;
  for (size_t i = 0; i < jobs.size(); ++i) {
    out.push_back({jobs[i].label, axis, jobs[i].value, futures[i].get()});
  }
  return out;
}

double WallclockMicros(const Scenario& scenario, int repetitions) {
  using Clock = std::chrono::steady_clock;
  if (repetitions < 1) repetitions = 1;
  auto t0 = Clock::now();
  for (int i = 0; i < repetitions; ++i) Run(scenario);
  std::chrono::duration<double, std::micro> total = Clock::now() - t0;
  return total.count() / repetitions;
}

}  // namespace pbsa
