// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vforge/core/types.hpp"

namespace vforge {

struct SyntheticOptions {
  std::size_t count = 100;
  std::uint64_t seed = 0;
  std::string id_prefix = "syn";
  int option_count = 4;
  // When non-empty, every problem gets a short reference solution that
  // carries this token, matching how the mock marks correct rationales.
  std::string sentinel;
};

// Multiple-choice problems with unique question texts and uniformly drawn
// gold letters. Deterministic in the options.
std::vector<Problem> make_synthetic_problems(const SyntheticOptions& options);

}  // namespace vforge
