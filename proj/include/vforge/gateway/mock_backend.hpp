// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vforge/core/types.hpp"
#include "vforge/gateway/backend.hpp"

namespace vforge {

// Local truth the mock uses to decide which answers are correct. It is
// looked up from the question text found inside the prompt and never
// travels in a request.
struct AnswerKeyEntry {
  TaskKind task = TaskKind::kMultipleChoice;
  std::string gold;
  std::vector<std::string> labels;
};

struct MockProfile {
  // Probability that one sample answers with the key's gold label, at any
  // positive temperature. The remaining mass is spread evenly over the
  // other legal labels. Temperature 0 always returns the most likely label.
  double correct_rate = 0.5;
  // Probability that a sample omits the "####" answer line entirely.
  double failure_rate = 0.0;
  // When non-empty, inserted into the rationale of every correct sample.
  std::string sentinel;
  int rationale_min_words = 10;
  int rationale_max_words = 20;
  std::unordered_map<std::string, AnswerKeyEntry> answer_key;  // by question text

  void add_to_key(const Problem& problem);
};

// Filler vocabulary of mock rationales. Synthetic reference solutions draw
// from it too, so they read like samples.
std::span<const std::string_view> mock_rationale_words();

// Deterministic stand-in for a generator LLM: the completion is a pure
// function of (prompt, seed, temperature) and the profile.
class MockBackend final : public Backend {
 public:
  MockBackend(BackendDescriptor descriptor, MockProfile profile);

  // The label the mock emits at temperature 0 for this prompt.
  std::string mode_answer(const std::string& prompt) const;

 protected:
  GenerationResult send(const GenerationRequest& request, const std::string& body) override;

 private:
  struct Truth {
    std::string gold;
    std::vector<std::string> labels;
  };
  Truth truth_for(const std::string& prompt) const;
  std::vector<double> answer_distribution(const Truth& truth, double temperature) const;

  MockProfile profile_;
  std::uint64_t seed_;
};

}  // namespace vforge
