// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "vforge/runner/config.hpp"

namespace vforge {

// What a subcommand produced. Failures are thrown as Error; the CLI turns
// their kind into the exit code.
struct CommandResult {
  std::string summary;  // human-readable lines for stdout
  nlohmann::json details = nlohmann::json::object();
};

// Samples k candidates per train and test problem into
// candidates.{train,test}.jsonl. Throws Error(kBackend, "shortfall") after
// writing outputs when too many problems came back short.
CommandResult cmd_generate(const RunConfig& config);

// Labels train candidates and writes adapter_dataset.jsonl, the
// adapter_{train,dev}.jsonl split and the objective's pair or batch files.
CommandResult cmd_build_dataset(const RunConfig& config);

// Trains the verifier and writes the checkpoint directory.
CommandResult cmd_train(const RunConfig& config);

// Scores test candidates, applies best-of-K and the baselines, and writes
// selections.jsonl and report.json.
CommandResult cmd_infer(const RunConfig& config);

// Classifier metrics of the checkpoint on the labeled test candidates plus
// the accuracy table from report.json, into evaluation.json.
CommandResult cmd_evaluate(const RunConfig& config);

// Prices billed usage across manifests into cost_report.json.
CommandResult cmd_cost_report(const RunConfig& config);

// Dispatches by subcommand name. Throws Error(kConfig, "unknown-command").
CommandResult run_command(const std::string& name, const RunConfig& config);

const std::vector<std::string>& command_names();

}  // namespace vforge
