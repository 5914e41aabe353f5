// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/selection/select.hpp"

#include <map>

#include "vforge/core/error.hpp"

namespace vforge {
namespace {

void require_nonempty(std::size_t n) {
  if (n == 0) throw data_error("empty-candidates", "selection needs at least one candidate");
}

}  // namespace

const ScoredCandidate& best_of_k(std::span<const ScoredCandidate> scored) {
  require_nonempty(scored.size());
  const ScoredCandidate* best = &scored[0];
  for (const ScoredCandidate& item : scored.subspan(1)) {
    if (item.score > best->score ||
        (item.score == best->score && item.candidate.index < best->candidate.index)) {
      best = &item;
    }
  }
  return *best;
}

std::optional<AnswerValue> self_consistency(std::span<const Candidate> candidates) {
  require_nonempty(candidates.size());
  struct Tally {
    int votes = 0;
    int first_index = 0;
  };
  std::map<std::string, Tally> tallies;
  for (const Candidate& candidate : candidates) {
    if (!candidate.answer) continue;
    auto [it, inserted] = tallies.try_emplace(candidate.answer->canonical, Tally{0, candidate.index});
    ++it->second.votes;
    if (candidate.index < it->second.first_index) it->second.first_index = candidate.index;
  }
  const std::pair<const std::string, Tally>* winner = nullptr;
  for (const auto& entry : tallies) {
    if (winner == nullptr || entry.second.votes > winner->second.votes ||
        (entry.second.votes == winner->second.votes &&
         entry.second.first_index < winner->second.first_index)) {
      winner = &entry;
    }
  }
  if (winner == nullptr) return std::nullopt;
  return AnswerValue{winner->first};
}

const Candidate& oracle_select(std::span<const Candidate> labeled) {
  require_nonempty(labeled.size());
  const Candidate* correct = nullptr;
  for (const Candidate& candidate : labeled) {
    if (candidate.label.value_or(false) && (correct == nullptr || candidate.index < correct->index)) {
      correct = &candidate;
    }
  }
  return correct != nullptr ? *correct : first_sample(labeled);
}

const Candidate& first_sample(std::span<const Candidate> candidates) {
  require_nonempty(candidates.size());
  const Candidate* first = &candidates[0];
  for (const Candidate& candidate : candidates) {
    if (candidate.index < first->index) first = &candidate;
  }
  return *first;
}

}  // namespace vforge
