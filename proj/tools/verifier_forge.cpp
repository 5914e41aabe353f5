// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line entry point. Exit codes: 0 ok, 2 config, 3 data, 4 backend,
// 5 training divergence.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vforge/core/error.hpp"
#include "vforge/runner/commands.hpp"
#include "vforge/runner/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Best-of-K verifier reranking pipeline"};
  app.set_version_flag("--version", "verifier-forge 0.1.0");

  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> k;
  std::optional<std::string> objective;
  std::optional<std::string> checkpoint;

  app.add_option("command", command, "Stage to run")
      ->required()
      ->check(CLI::IsMember(vforge::command_names()));
  app.add_option("--config", config_path, "key = value run configuration")->required();
  app.add_option("--seed", seed, "Base seed; derives generation, inference and training seeds");
  app.add_option("--k", k, "Candidates per problem")->check(CLI::PositiveNumber);
  app.add_option("--objective", objective, "Verifier training objective")
      ->check(CLI::IsMember({"bce", "pairwise", "infonce"}));
  app.add_option("--checkpoint", checkpoint, "Checkpoint directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(vforge::ErrorKind::kConfig);
  }

  try {
    vforge::CliOverrides overrides;
    overrides.seed = seed;
    overrides.k = k;
    overrides.objective = objective;
    if (checkpoint) overrides.checkpoint = std::filesystem::path(*checkpoint);
    const vforge::RunConfig config = vforge::load_run_config(config_path, overrides);
    const vforge::CommandResult result = vforge::run_command(command, config);
    std::cout << result.summary << std::endl;
    return 0;
  } catch (const vforge::Error& e) {
    std::cerr << "verifier-forge " << command << ": " << e.code() << ": " << e.what() << std::endl;
    return e.exit_code();
  } catch (const std::exception& e) {
    // Parse failures inside third-party readers surface here; they concern
    // input files.
    std::cerr << "verifier-forge " << command << ": " << e.what() << std::endl;
    return static_cast<int>(vforge::ErrorKind::kData);
  }
}
