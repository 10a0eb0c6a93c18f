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


// pbsa: run, sweep and inspect scenarios.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pbsa/harness/report.h"
#include "pbsa/harness/scenario.h"
#include "pbsa/harness/simulator.h"
#include "pbsa/harness/sweep.h"

namespace {

int Write(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "pbsa: cannot write " << out << "\n";
    return 1;
  }
  f << text;
  return 0;
}

std::vector<int64_t> ParsePoints(const std::string& list) {
  std::vector<int64_t> points;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      points.push_back(std::stoll(item));
      continue;
    }
    // lo..hi or lo..hi:step
    int64_t lo = std::stoll(item.substr(0, dots));
    std::string rest = item.substr(dots + 2);
    int64_t step = 1;
    if (auto colon = rest.find(':'); colon != std::string::npos) {
      step = std::stoll(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    int64_t hi = std::stoll(rest);
    if (step < 1) throw std::invalid_argument("step must be positive");
    for (int64_t v = lo; v <= hi; v += step) points.push_back(v);
  }
  if (points.empty()) throw std::invalid_argument("empty point list");
  return points;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Policy based security application simulator"};
  app.require_subcommand(1);

  std::string scenario_path, mode, emit = "table", out, axis, points, switch_id;
  uint64_t seed = 0;
  bool wallclock = false;

  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("scenario", scenario_path)->required();
  run->add_option("--mode", mode)->check(CLI::IsMember({"reactive", "proactive"}));
  run->add_option("--seed", seed);
  run->add_option("--emit", emit)->check(CLI::IsMember({"table", "delimited", "records"}));
  run->add_option("--out", out);
  run->add_flag("--wallclock", wallclock, "Also report mean wall-clock time over 10 runs");

  auto* sweep = app.add_subcommand("sweep", "Run a generator scenario over an axis");
  sweep->add_option("scenario", scenario_path)->required();
  sweep->add_option("--axis", axis)
      ->required()
      ->check(CLI::IsMember({"pe_count", "switch_count", "as_count", "request_rate"}));
  sweep->add_option("--points", points, "e.g. 100,200 or 100..500:100")->required();
  sweep->add_option("--mode", mode)->check(CLI::IsMember({"reactive", "proactive"}));
  sweep->add_option("--seed", seed);
  sweep->add_option("--emit", emit)->check(CLI::IsMember({"table", "delimited", "records"}));
  sweep->add_option("--out", out);

  auto* dump = app.add_subcommand("dump-flows", "Run a scenario and print a flow table");
  dump->add_option("scenario", scenario_path)->required();
  dump->add_option("--switch", switch_id)->required();
  dump->add_option("--mode", mode)->check(CLI::IsMember({"reactive", "proactive"}));

  auto* validate = app.add_subcommand("validate", "Load and check a scenario");
  validate->add_option("scenario", scenario_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      pbsa::SweepOptions options;
      if (!mode.empty()) options.proactive = mode == "proactive";
      if (sweep->count("--seed")) options.seed = seed;
      auto doc = pbsa::LoadScenarioDocument(scenario_path);
      auto result = pbsa::Sweep(doc, std::filesystem::path(scenario_path).parent_path(),
                                axis, ParsePoints(points), options);
      return Write(pbsa::EmitSweep(result, pbsa::ParseEmitFormat(emit)), out);
    }

    pbsa::Scenario s = pbsa::LoadScenario(scenario_path);
    if (!mode.empty()) s.proactive = mode == "proactive";
    if (*validate) {
      pbsa::World world(s);
      std::cout << "ok " << s.name << ": " << s.domains.size() << " domains, "
                << world.switches().size() << " switches, "
                << pbsa::TrafficProgram(s).size() << " flows\n";
      return 0;
    }
    if (*dump) {
      auto result = pbsa::Simulate(s);
      if (!result.world->HasSwitch(switch_id)) {
        std::cerr << "pbsa: no switch \"" << switch_id << "\"\n";
        return 1;
      }
      std::cout << result.world->switch_at(switch_id).FlowDumpText();
      return 0;
    }
    if (run->count("--seed")) s.seed = seed;
    std::string text = pbsa::Emit(pbsa::Run(s), pbsa::ParseEmitFormat(emit));
    if (wallclock) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "wallclock_us_mean_10 %.1f\n",
                    pbsa::WallclockMicros(s, 10));
      std::cerr << buf;
    }
    return Write(text, out);
  } catch (const std::exception& e) {
    std::cerr << "pbsa: " << e.what() << "\n";
    return 1;
  }
}
