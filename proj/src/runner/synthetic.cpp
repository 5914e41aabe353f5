// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/runner/synthetic.hpp"

#include <array>
#include <string_view>

#include "vforge/core/error.hpp"
#include "vforge/core/hash.hpp"
#include "vforge/core/random.hpp"
#include "vforge/gateway/mock_backend.hpp"

namespace vforge {
namespace {

constexpr std::array<std::string_view, 16> kFindings = {
    "fever",    "fatigue",  "rash",     "cough",     "edema",    "jaundice", "tremor",  "syncope",
    "dyspnea",  "anemia",   "headache", "arthralgia", "pruritus", "ataxia",  "pallor",  "myalgia"};
constexpr std::array<std::string_view, 12> kOptions = {
    "viral infection", "autoimmune flare", "drug reaction",  "iron deficiency",
    "thyroid disease", "renal failure",    "heart failure",  "vitamin deficiency",
    "bacterial sepsis", "liver disease",   "dehydration",    "neuropathy"};

}  // namespace

std::vector<Problem> make_synthetic_problems(const SyntheticOptions& options) {
  if (options.option_count < 2 || options.option_count > static_cast<int>(kOptions.size())) {
    throw config_error("bad-synthetic-options", "option_count must lie in [2, 12]");
  }
  std::vector<Problem> problems;
  problems.reserve(options.count);
  Rng rng(mix_seed(options.seed, "synthetic-problems"));
  Rng solution_rng(mix_seed(options.seed, "synthetic-solutions"));
  for (std::size_t i = 0; i < options.count; ++i) {
    Problem problem;
    problem.id = options.id_prefix + "-" + std::to_string(i + 1);
    problem.task = TaskKind::kMultipleChoice;
    problem.question = "Case " + problem.id + ": a patient reports " +
                       std::string(kFindings[rng.below(kFindings.size())]) + " and " +
                       std::string(kFindings[rng.below(kFindings.size())]) +
                       ". Which diagnosis is most likely?";
    std::vector<std::size_t> picks(kOptions.size());
    for (std::size_t j = 0; j < picks.size(); ++j) picks[j] = j;
    rng.shuffle(picks);
    for (int j = 0; j < options.option_count; ++j) {
      problem.options.push_back({std::string(1, static_cast<char>('A' + j)), std::string(kOptions[picks[j]])});
    }
    const int gold = static_cast<int>(rng.below(static_cast<std::uint64_t>(options.option_count)));
    problem.gold = AnswerValue{std::string(1, static_cast<char>('A' + gold))};
    if (!options.sentinel.empty()) {
      // Same shape as a correct mock sample: 10 to 20 filler words with the
      // sentinel at a random slot.
      const auto words = mock_rationale_words();
      std::vector<std::string_view> picked(10 + solution_rng.below(11));
      for (auto& word : picked) word = words[solution_rng.below(words.size())];
      picked.insert(picked.begin() + static_cast<std::ptrdiff_t>(solution_rng.below(picked.size() + 1)),
                    options.sentinel);
      std::string solution;
      for (std::string_view word : picked) {
        if (!solution.empty()) solution += ' ';
        solution += word;
      }
      problem.solution = solution + ".";
    }
    validate_problem(problem);
    problems.push_back(std::move(problem));
  }
  return problems;
}

}  // namespace vforge
