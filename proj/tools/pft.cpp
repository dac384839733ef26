// Copyright 2026 The pft Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run or validate experiment configs.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "pft/runner.hpp"
#include "pft/version.hpp"

int main(int argc, char **argv) {
  CLI::App app{"Perfect function transfer in engineered Bose-Hubbard chains"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  std::string format;
  int threads = 0;

  auto *run = app.add_subcommand("run", "Run an experiment config and write result tables");
  run->add_option("config", config, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output.path)");
  run->add_option("--format", format, "Table format (overrides output.format)")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--threads", threads, "Worker threads, capped by PFT_MAX_THREADS")
      ->check(CLI::NonNegativeNumber);

  auto *validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("config", config, "Experiment config (JSON)")->required();

  auto *version = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? pft::kExitOk : pft::kExitConfig;
  }

  if (*version) {
    std::cout << "pft " << pft::kVersion << "\n";
    return pft::kExitOk;
  }
  if (*validate) return pft::validate_config_file(config, std::cout, std::cerr);

  pft::RunOptions opt;
  if (!out_dir.empty()) opt.out_dir = out_dir;
  if (!format.empty()) opt.format = format == "csv" ? pft::TableFormat::Csv : pft::TableFormat::Json;
  opt.threads = threads;
  return pft::run_config_file(config, opt, std::cout, std::cerr);
}
