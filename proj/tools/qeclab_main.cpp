// Copyright 2026 the qeclab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qeclab/experiment.hpp"

namespace {

using nlohmann::json;

int load_config(const std::string& path, const std::string& preset_name,
                qeclab::ExperimentConfig* out) {
  if (!preset_name.empty()) {
    for (const auto& p : qeclab::presets()) {
      if (p.name == preset_name) {
        *out = p.config;
        return 0;
      }
    }
    std::fprintf(stderr, "error: unknown preset: %s\n", preset_name.c_str());
    return 2;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot read config file: %s\n",
                 path.c_str());
    return 2;
  }
  try {
    json doc = json::parse(in);  // throws with line/column on bad input
    *out = qeclab::config_from_json(doc);
  } catch (const json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const qeclab::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qeclab: measurement-free error-correction cycle simulator"};
  app.require_subcommand(1);
  std::string out_dir;
  int jobs = 1;
  std::optional<std::uint64_t> seed;

  std::string run_config_path;
  std::string run_preset;
  CLI::App* run = app.add_subcommand("run", "Execute an experiment config");
  run->add_option("config", run_config_path, "Path to a JSON config");
  run->add_option("--preset", run_preset, "Run a named preset instead");
  run->add_option("--out", out_dir, "Output directory override");
  run->add_option("--jobs", jobs, "Worker count for sweep points")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "RNG seed override");

  std::string validate_path;
  bool validate_json = false;
  CLI::App* validate =
      app.add_subcommand("validate", "Check a config without running");
  validate->add_option("config", validate_path, "Path to a JSON config")
      ->required();
  validate->add_flag("--json", validate_json,
                     "Emit the error list as a JSON document");

  CLI::App* presets_cmd = app.add_subcommand("presets", "Preset catalog");
  CLI::App* presets_list =
      presets_cmd->add_subcommand("list", "List shipped presets");
  std::string show_name;
  CLI::App* presets_show =
      presets_cmd->add_subcommand("show", "Print a preset's config JSON");
  presets_show->add_option("name", show_name, "Preset name")->required();
  presets_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (run->parsed()) {
    if (run_config_path.empty() == run_preset.empty()) {
      std::fprintf(stderr,
                   "error: pass exactly one of a config path or --preset\n");
      return 2;
    }
    qeclab::ExperimentConfig config;
    if (int rc = load_config(run_config_path, run_preset, &config)) return rc;
    if (seed) config.seed = *seed;
    const qeclab::RunResult result =
        qeclab::run_experiment(config, out_dir, jobs);
    for (const auto& err : result.errors)
      std::fprintf(stderr, "error: %s\n", err.c_str());
    for (const auto& f : result.files_written)
      std::printf("wrote %s\n", f.c_str());
    return result.exit_code;
  }

  if (validate->parsed()) {
    qeclab::ExperimentConfig config;
    std::vector<std::string> errors;
    const int rc = load_config(validate_path, "", &config);
    if (rc != 0 && !validate_json) return rc;
    if (rc == 0) errors = qeclab::validate_config(config);
    else errors.push_back("config file unreadable or malformed");
    if (validate_json) {
      json doc{{"errors", errors}, {"pass", errors.empty()}};
      std::printf("%s\n", doc.dump(2).c_str());
    } else if (errors.empty()) {
      std::printf("PASS\n");
    } else {
      for (const auto& err : errors)
        std::fprintf(stderr, "error: %s\n", err.c_str());
    }
    return errors.empty() ? 0 : 2;
  }

  if (presets_list->parsed()) {
    for (const auto& p : qeclab::presets())
      std::printf("%-24s %s\n", p.name.c_str(), p.summary.c_str());
    return 0;
  }
  if (presets_show->parsed()) {
    for (const auto& p : qeclab::presets()) {
      if (p.name == show_name) {
        std::printf("%s\n", qeclab::config_to_json(p.config).dump(2).c_str());
        return 0;
      }
    }
    std::fprintf(stderr, "error: unknown preset: %s\n", show_name.c_str());
    return 2;
  }
  return 0;
}
