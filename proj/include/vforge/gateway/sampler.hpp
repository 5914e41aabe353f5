// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "vforge/core/types.hpp"
#include "vforge/gateway/backend.hpp"
#include "vforge/gateway/cache.hpp"
#include "vforge/gateway/complete.hpp"

namespace vforge {

struct SampleOutcome {
  std::vector<Candidate> candidates;  // indexed 1..n, n <= k, seed order
  int shortfall = 0;                  // k - n
  TokenUsage billed;                  // usage of uncached completions only
  TokenUsage total;                   // usage of every returned candidate
  int backend_calls = 0;              // uncached completions
};

// Requests k completions with seeds decoding.seed .. decoding.seed + k - 1,
// at most max_parallel in flight, and parses each into a Candidate. An
// empty template selects the task's default.
// Completions that still fail after retries are dropped and counted in
// `shortfall`; configuration errors propagate.
SampleOutcome sample_candidates(const Problem& problem, int k, Backend& backend,
                                const GenerationRequest& decoding, ResponseCache* cache,
                                const std::string& prompt_template,
                                const RetryPolicy& policy = {});

}  // namespace vforge
