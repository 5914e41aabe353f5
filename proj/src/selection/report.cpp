// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/selection/report.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "vforge/core/answer.hpp"
#include "vforge/core/error.hpp"

namespace vforge {

nlohmann::json EvalReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const ProblemOutcome& outcome : per_problem) {
    rows.push_back({{"problem_id", outcome.problem_id},
                    {"selected_index", outcome.selected_index},
                    {"answer", outcome.answer ? nlohmann::json(outcome.answer->canonical)
                                              : nlohmann::json(nullptr)},
                    {"correct", outcome.correct}});
  }
  nlohmann::json out = {{"method", method},
                        {"n", n},
                        {"correct", correct},
                        {"accuracy", accuracy},
                        {"delta_vs_base", delta_vs_base ? nlohmann::json(*delta_vs_base)
                                                        : nlohmann::json(nullptr)},
                        {"per_problem", std::move(rows)},
                        {"shortfall", shortfall},
                        {"cost", cost}};
  if (!baseline_method.empty()) out["baseline"] = baseline_method;
  return out;
}

EvalReport evaluate(const std::string& method, const std::vector<Selection>& selections,
                    const std::vector<Problem>& problems, const EvalReport* baseline) {
  std::unordered_map<std::string, const Selection*> by_problem;
  for (const Selection& selection : selections) {
    if (!by_problem.emplace(selection.problem_id, &selection).second) {
      throw data_error("selection-mismatch", "two selections for problem '" + selection.problem_id + "'");
    }
  }
  if (selections.size() != problems.size()) {
    throw data_error("selection-mismatch", std::to_string(selections.size()) + " selections for " +
                                               std::to_string(problems.size()) + " problems");
  }
  EvalReport report;
  report.method = method;
  report.n = problems.size();
  for (const Problem& problem : problems) {
    auto it = by_problem.find(problem.id);
    if (it == by_problem.end()) {
      throw data_error("selection-mismatch", "no selection for problem '" + problem.id + "'");
    }
    const Selection& selection = *it->second;
    ProblemOutcome outcome{problem.id, selection.selected_index, selection.answer, false};
    outcome.correct = selection.answer && answers_equal(*selection.answer, problem.gold, problem.task);
    if (outcome.correct) ++report.correct;
    report.per_problem.push_back(std::move(outcome));
  }
  report.accuracy =
      report.n == 0 ? 0.0 : 100.0 * static_cast<double>(report.correct) / static_cast<double>(report.n);
  if (baseline != nullptr) {
    report.delta_vs_base = report.accuracy - baseline->accuracy;
    report.baseline_method = baseline->method;
  }
  return report;
}

std::string format_percent(double value, bool signed_form) {
  // Round half away from zero at the second decimal; the nudge absorbs
  // binary representation error such as 62.90 - 16.13 = 46.769999...
  const double scaled = std::round(value * 100.0 + (value >= 0 ? 1e-7 : -1e-7));
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, signed_form ? "%+.2f" : "%.2f", scaled / 100.0);
  return buffer;
}

}  // namespace vforge
