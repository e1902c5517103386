// Copyright 2026 The streamex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// streamex: run budgeted active-learning experiments from a config file.
//
//   streamex run <config> [--jobs N] [--output PATH] [--seed-override S]
//   streamex presets list
//   streamex validate <config>

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "streamex/config.hpp"
#include "streamex/grid.hpp"
#include "streamex/streams.hpp"

namespace {

const char* family_name(streamex::PresetFamily f) {
  switch (f) {
    case streamex::PresetFamily::kRbf: return "RBF";
    case streamex::PresetFamily::kTree: return "TREE";
    case streamex::PresetFamily::kSea: return "SEA";
    case streamex::PresetFamily::kStagger: return "STAGGER";
    case streamex::PresetFamily::kHyperplane: return "HYPER";
  }
  return "?";
}

int list_presets() {
  std::printf("%-8s %-8s %10s %5s %7s %7s %6s %6s\n", "name", "family", "length", "dims",
              "classes", "width", "drifts", "noise");
  for (const auto& p : streamex::preset_catalog()) {
    std::printf("%-8s %-8s %10llu %5zu %7zu %7g %6zu %6g\n", p.name.c_str(), family_name(p.family),
                static_cast<unsigned long long>(p.length), p.dims, p.classes,
                p.family == streamex::PresetFamily::kHyperplane ? p.rotation_rate : p.drift_width,
                p.drift_count, p.noise);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budgeted active learning with instance exploitation on drifting streams"};
  app.require_subcommand(1);

  std::string run_config;
  std::size_t jobs = 1;
  std::string output;
  std::uint64_t seed_override = 0;
  auto* run = app.add_subcommand("run", "Run the experiment grid of a config");
  run->add_option("config", run_config, "Config file")->required();
  run->add_option("--jobs,-j", jobs, "Grid cells evaluated in parallel")->check(CLI::PositiveNumber);
  auto* output_opt = run->add_option("--output,-o", output, "Result CSV path");
  auto* seed_opt = run->add_option("--seed-override", seed_override, "Replace the seed list by one seed");

  auto* presets = app.add_subcommand("presets", "Benchmark stream presets");
  presets->require_subcommand(1);
  presets->add_subcommand("list", "List presets");

  std::string validate_config;
  auto* validate = app.add_subcommand("validate", "Parse a config and print it with defaults");
  validate->add_option("config", validate_config, "Config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*presets) return list_presets();

    if (*validate) {
      const auto config = streamex::load_config(validate_config);
      std::cout << streamex::describe(config);
      std::cout << "cells = " << streamex::expand_grid(config).size() << "\n";
      return 0;
    }

    auto config = streamex::load_config(run_config);
    if (*seed_opt) config.seeds = {seed_override};
    if (*output_opt) config.output = output;
    const std::string path = streamex::default_output_path(config);

    streamex::GridOptions options;
    options.jobs = jobs;
    options.progress = &std::cerr;
    const auto result = streamex::run_grid(config, options);
    streamex::write_results(path, result.rows);
    std::cerr << "wrote " << result.rows.size() << " rows to " << path << "\n";
    if (result.failures > 0) {
      std::cerr << result.failures << " cell(s) failed\n";
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "streamex: " << e.what() << "\n";
    return 2;
  }
}
