// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/gateway/mock_backend.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>

#include "vforge/core/error.hpp"
#include "vforge/core/hash.hpp"
#include "vforge/core/random.hpp"

namespace vforge {
namespace {

// Lowercase filler with no task label in it, so a rationale without an
// answer line never parses as an answer by accident.
constexpr std::array<std::string_view, 48> kWords = {
    "the",       "patient",   "presents",  "with",     "symptoms",  "consistent", "chronic",
    "acute",     "finding",   "suggests",  "pathway",  "receptor",  "therapy",    "dose",
    "clinical",  "evidence",  "indicates", "tissue",   "response",  "mechanism",  "lesion",
    "signal",    "nerve",     "tract",     "vessel",   "pressure",  "infection",  "marker",
    "elevated",  "reduced",   "typical",   "likely",   "because",   "therefore",  "considering",
    "history",   "exam",      "imaging",   "lab",      "result",    "supports",   "excludes",
    "diagnosis", "treatment", "first",     "line",     "option",    "mostly"};

}  // namespace

std::span<const std::string_view> mock_rationale_words() { return kWords; }

namespace {

std::int64_t count_words(std::string_view text) {
  std::int64_t n = 0;
  bool in_word = false;
  for (char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

std::vector<std::string> default_labels() { return {"A", "B", "C", "D"}; }

}  // namespace

void MockProfile::add_to_key(const Problem& problem) {
  AnswerKeyEntry entry;
  entry.task = problem.task;
  entry.gold = problem.gold.canonical;
  if (problem.task == TaskKind::kMultipleChoice) {
    for (const Option& option : problem.options) entry.labels.push_back(option.letter);
    if (entry.labels.empty()) entry.labels = default_labels();
  } else {
    auto labels = legal_labels(problem.task);
    entry.labels.assign(labels.begin(), labels.end());
  }
  answer_key[problem.question] = std::move(entry);
}

MockBackend::MockBackend(BackendDescriptor descriptor, MockProfile profile)
    : Backend(std::move(descriptor)), profile_(std::move(profile)) {
  if (!this->descriptor().mock_seed) {
    throw config_error("invalid-backend", "mock backends require a seed");
  }
  if (profile_.correct_rate < 0.0 || profile_.correct_rate > 1.0 ||
      profile_.failure_rate < 0.0 || profile_.failure_rate > 1.0) {
    throw config_error("invalid-backend", "mock rates must lie in [0, 1]");
  }
  if (profile_.rationale_min_words < 1 || profile_.rationale_max_words < profile_.rationale_min_words) {
    throw config_error("invalid-backend", "mock rationale length range is empty");
  }
  seed_ = *this->descriptor().mock_seed;
}

MockBackend::Truth MockBackend::truth_for(const std::string& prompt) const {
  const AnswerKeyEntry* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& [question, entry] : profile_.answer_key) {
    if (question.size() > best_len && prompt.find(question) != std::string::npos) {
      best = &entry;
      best_len = question.size();
    }
  }
  if (best != nullptr) return {best->gold, best->labels};
  Truth truth{"", default_labels()};
  truth.gold = truth.labels[mix_seed(seed_, prompt) % truth.labels.size()];
  return truth;
}

std::vector<double> MockBackend::answer_distribution(const Truth& truth, double temperature) const {
  const std::size_t n = truth.labels.size();
  std::vector<double> probs(n, n > 1 ? (1.0 - profile_.correct_rate) / static_cast<double>(n - 1) : 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (truth.labels[i] == truth.gold) probs[i] = n > 1 ? profile_.correct_rate : 1.0;
  }
  if (temperature == 0.0) {
    const auto mode = std::max_element(probs.begin(), probs.end()) - probs.begin();
    std::fill(probs.begin(), probs.end(), 0.0);
    probs[mode] = 1.0;
    return probs;
  }
  // Positive temperatures keep the distribution as is, so the configured
  // rate is what sampling delivers.
  return probs;
}

std::string MockBackend::mode_answer(const std::string& prompt) const {
  const Truth truth = truth_for(prompt);
  const auto probs = answer_distribution(truth, 0.0);
  return truth.labels[std::max_element(probs.begin(), probs.end()) - probs.begin()];
}

GenerationResult MockBackend::send(const GenerationRequest& request, const std::string& /*body*/) {
  std::uint64_t temperature_bits = 0;
  std::memcpy(&temperature_bits, &request.temperature, sizeof(temperature_bits));
  Rng rng(mix_seed(mix_seed(mix_seed(seed_, request.prompt), request.seed), temperature_bits));

  const Truth truth = truth_for(request.prompt);
  const auto probs = answer_distribution(truth, request.temperature);
  double u = rng.uniform();
  std::size_t pick = probs.size() - 1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (u < probs[i]) {
      pick = i;
      break;
    }
    u -= probs[i];
  }
  const std::string& answer = truth.labels[pick];
  const bool correct = answer == truth.gold;

  const int span = profile_.rationale_max_words - profile_.rationale_min_words + 1;
  const int length = profile_.rationale_min_words + static_cast<int>(rng.below(span));
  std::vector<std::string> words;
  words.reserve(length + 1);
  for (int i = 0; i < length; ++i) words.emplace_back(kWords[rng.below(kWords.size())]);
  if (correct && !profile_.sentinel.empty()) {
    words.insert(words.begin() + static_cast<std::ptrdiff_t>(rng.below(words.size() + 1)),
                 profile_.sentinel);
  }
  std::string text;
  for (const auto& word : words) {
    if (!text.empty()) text += ' ';
    text += word;
  }
  text += '.';
  const bool drop_answer = rng.uniform() < profile_.failure_rate;
  if (!drop_answer) text += " #### " + answer + ".";

  GenerationResult result;
  result.text = std::move(text);
  result.usage.prompt_tokens = count_words(request.prompt);
  result.usage.completion_tokens = count_words(result.text);
  return result;
}

}  // namespace vforge
