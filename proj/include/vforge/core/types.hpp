// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace vforge {

enum class TaskKind {
  kMultipleChoice,
  kYesNoMaybe,
  kYesNo,
  kNli3Way,
  kBinaryEntailment,
  kFact4Way,
};

std::string_view to_string(TaskKind kind);
// Throws Error(kData, "unknown-task") for names outside the enum.
TaskKind parse_task_kind(std::string_view name);

// The closed label set for a task. Multiple-choice admits the letters A..Z;
// a particular problem narrows that to its own option letters.
std::span<const std::string> legal_labels(TaskKind kind);
bool is_legal_label(TaskKind kind, std::string_view canonical);

// Canonical answer: an uppercase letter for multiple-choice, a lowercase
// label token otherwise. Construct through normalize_answer().
struct AnswerValue {
  std::string canonical;

  friend bool operator==(const AnswerValue&, const AnswerValue&) = default;
};

struct Option {
  std::string letter;
  std::string text;
};

struct Problem {
  std::string id;
  TaskKind task = TaskKind::kMultipleChoice;
  std::string question;
  std::vector<Option> options;
  AnswerValue gold;
  std::optional<std::string> context;
  // Reference worked solution, when the source provides one. Like gold, it
  // is training-side only and never rendered into a prompt.
  std::optional<std::string> solution;
  // Fields not in the schema, kept so a read/write cycle is lossless.
  nlohmann::json extra = nlohmann::json::object();
};

// Throws Error(kData, "invalid-problem") when option letters are not unique
// and contiguous from "A", or when gold is not legal for the problem.
void validate_problem(const Problem& problem);

struct TokenUsage {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;

  TokenUsage& operator+=(const TokenUsage& other) {
    prompt_tokens += other.prompt_tokens;
    completion_tokens += other.completion_tokens;
    return *this;
  }
  friend bool operator==(const TokenUsage&, const TokenUsage&) = default;
};

struct Candidate {
  std::string problem_id;
  int index = 1;  // 1-based position within the problem's K samples
  std::string rationale;
  std::optional<AnswerValue> answer;  // nullopt marks extraction failure
  std::optional<bool> label;
  std::string raw;
  TokenUsage usage;
  nlohmann::json extra = nlohmann::json::object();
};

struct AdapterExample {
  std::string text;
  bool label = false;
  std::string problem_id;
  int candidate_index = 0;  // 0 for synthesized gold positives
  bool is_gold_positive = false;
};

}  // namespace vforge
