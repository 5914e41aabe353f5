// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <vector>

#include "vforge/core/types.hpp"
#include "vforge/selection/select.hpp"

namespace vforge::fixture {

// The published case study: eight generations for a proprioception question
// whose gold answer is B, with the adapter's score for each.
inline constexpr std::array<double, 8> kCaseStudyScores = {0.318, 0.767, 0.366, 0.143,
                                                           0.301, 0.777, 0.754, 0.896};
inline constexpr std::array<const char*, 8> kCaseStudyAnswers = {"A", "D", "D", "A", "A", "D", "D", "B"};

inline Problem case_study_problem() {
  Problem p;
  p.id = "case-study";
  p.task = TaskKind::kMultipleChoice;
  p.question = "Which of the following is true about proprioception?";
  p.options = {{"A", "Impulses travel in the spinothalamic tract"},
               {"B", "Impulses travel in the dorsal columns"},
               {"C", "Receptors are free nerve endings"},
               {"D", "Impulses for pain travel with it"}};
  p.gold = AnswerValue{"B"};
  return p;
}

inline std::vector<ScoredCandidate> case_study_candidates() {
  std::vector<ScoredCandidate> out;
  for (std::size_t i = 0; i < kCaseStudyScores.size(); ++i) {
    Candidate c;
    c.problem_id = "case-study";
    c.index = static_cast<int>(i + 1);
    c.answer = AnswerValue{kCaseStudyAnswers[i]};
    c.label = std::string(kCaseStudyAnswers[i]) == "B";
    c.rationale = "generation " + std::to_string(i + 1);
    c.raw = c.rationale + " #### " + kCaseStudyAnswers[i];
    out.push_back({c, kCaseStudyScores[i]});
  }
  return out;
}

}  // namespace vforge::fixture
