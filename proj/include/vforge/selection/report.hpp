// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vforge/core/types.hpp"

namespace vforge {

// One method's pick for one problem. selected_index is 0 when the method
// produced no candidate (for example, every extraction failed).
struct Selection {
  std::string problem_id;
  int selected_index = 0;
  std::optional<AnswerValue> answer;
};

struct ProblemOutcome {
  std::string problem_id;
  int selected_index = 0;
  std::optional<AnswerValue> answer;
  bool correct = false;
};

struct EvalReport {
  std::string method;
  std::size_t n = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;  // percent
  std::optional<double> delta_vs_base;  // percentage points
  std::string baseline_method;
  std::vector<ProblemOutcome> per_problem;
  nlohmann::json shortfall = nlohmann::json::object();
  nlohmann::json cost = nlohmann::json::object();

  nlohmann::json to_json() const;
};

// Scores one selection per problem against gold. Throws
// Error(kData, "selection-mismatch") when selections and problems do not
// correspond one to one.
EvalReport evaluate(const std::string& method, const std::vector<Selection>& selections,
                    const std::vector<Problem>& problems, const EvalReport* baseline = nullptr);

// Two-decimal rendering used in summaries ("62.90", "+46.77").
std::string format_percent(double value, bool signed_form = false);

}  // namespace vforge
