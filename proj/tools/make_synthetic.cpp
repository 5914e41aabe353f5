// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

// Writes a synthetic multiple-choice problems.jsonl for desk runs.

#include <iostream>

#include "CLI11.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/jsonl.hpp"
#include "vforge/runner/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Synthetic problem generator"};
  vforge::SyntheticOptions options;
  std::string out;
  app.add_option("--count", options.count, "Number of problems")->required();
  app.add_option("--seed", options.seed, "Generator seed");
  app.add_option("--prefix", options.id_prefix, "Problem id prefix");
  app.add_option("--options", options.option_count, "Options per problem")->check(CLI::Range(2, 12));
  app.add_option("--sentinel", options.sentinel, "Token carried by reference solutions");
  app.add_option("--out", out, "Output path")->required();
  CLI11_PARSE(app, argc, argv);
  try {
    vforge::write_problems(out, vforge::make_synthetic_problems(options));
  } catch (const vforge::Error& e) {
    std::cerr << e.code() << ": " << e.what() << std::endl;
    return e.exit_code();
  }
  std::cout << "wrote " << options.count << " problems to " << out << std::endl;
  return 0;
}
