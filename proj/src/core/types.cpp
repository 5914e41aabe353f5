// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/core/types.hpp"

#include <algorithm>
#include <array>

#include "vforge/core/error.hpp"

namespace vforge {
namespace {

struct TaskName {
  TaskKind kind;
  std::string_view name;
};

constexpr std::array<TaskName, 6> kTaskNames = {{
    {TaskKind::kMultipleChoice, "multiple-choice"},
    {TaskKind::kYesNoMaybe, "yes-no-maybe"},
    {TaskKind::kYesNo, "yes-no"},
    {TaskKind::kNli3Way, "nli-3way"},
    {TaskKind::kBinaryEntailment, "binary-entailment"},
    {TaskKind::kFact4Way, "fact-4way"},
}};

std::vector<std::string> letters() {
  std::vector<std::string> out;
  for (char c = 'A'; c <= 'Z'; ++c) out.emplace_back(1, c);
  return out;
}

}  // namespace

std::string_view to_string(TaskKind kind) {
  for (const auto& entry : kTaskNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "unknown";
}

TaskKind parse_task_kind(std::string_view name) {
  for (const auto& entry : kTaskNames) {
    if (entry.name == name) return entry.kind;
  }
  throw data_error("unknown-task", "unknown task kind '" + std::string(name) + "'");
}

std::span<const std::string> legal_labels(TaskKind kind) {
  static const std::vector<std::string> kLetters = letters();
  static const std::vector<std::string> kYesNoMaybe = {"yes", "no", "maybe"};
  static const std::vector<std::string> kYesNo = {"yes", "no"};
  static const std::vector<std::string> kNli = {"entailment", "neutral", "contradiction"};
  static const std::vector<std::string> kBinary = {"true", "false"};
  static const std::vector<std::string> kFact = {"true", "false", "mixture", "unproven"};
  switch (kind) {
    case TaskKind::kMultipleChoice: return kLetters;
    case TaskKind::kYesNoMaybe: return kYesNoMaybe;
    case TaskKind::kYesNo: return kYesNo;
    case TaskKind::kNli3Way: return kNli;
    case TaskKind::kBinaryEntailment: return kBinary;
    case TaskKind::kFact4Way: return kFact;
  }
  return {};
}

bool is_legal_label(TaskKind kind, std::string_view canonical) {
  auto labels = legal_labels(kind);
  return std::find(labels.begin(), labels.end(), canonical) != labels.end();
}

void validate_problem(const Problem& problem) {
  auto fail = [&](const std::string& why) {
    throw data_error("invalid-problem", "problem '" + problem.id + "': " + why);
  };
  if (problem.id.empty()) fail("empty id");
  for (std::size_t i = 0; i < problem.options.size(); ++i) {
    const std::string expected(1, static_cast<char>('A' + i));
    if (problem.options[i].letter != expected) {
      fail("option letters must be contiguous from A; got '" +
           problem.options[i].letter + "' at position " + std::to_string(i));
    }
  }
  if (!is_legal_label(problem.task, problem.gold.canonical)) {
    fail("gold '" + problem.gold.canonical + "' is not a legal " +
         std::string(to_string(problem.task)) + " label");
  }
  if (problem.task == TaskKind::kMultipleChoice && !problem.options.empty()) {
    const char gold = problem.gold.canonical[0];
    if (gold - 'A' >= static_cast<int>(problem.options.size())) {
      fail("gold '" + problem.gold.canonical + "' has no matching option");
    }
  }
}

}  // namespace vforge
