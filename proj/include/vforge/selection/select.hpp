// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vforge/core/types.hpp"

namespace vforge {

struct ScoredCandidate {
  Candidate candidate;
  double score = 0.0;
};

// Highest score wins; equal scores go to the lowest candidate index.
// Throws Error(kData, "empty-candidates").
const ScoredCandidate& best_of_k(std::span<const ScoredCandidate> scored);

// Majority vote over extracted answers. Failed extractions do not vote;
// ties go to the answer that appears first. nullopt when nothing parsed.
std::optional<AnswerValue> self_consistency(std::span<const Candidate> candidates);

// Lowest-index correct candidate, else the lowest-index one.
// Throws Error(kData, "empty-candidates").
const Candidate& oracle_select(std::span<const Candidate> labeled);

// Lowest-index candidate: the unadapted single-pass generator.
const Candidate& first_sample(std::span<const Candidate> candidates);

}  // namespace vforge
