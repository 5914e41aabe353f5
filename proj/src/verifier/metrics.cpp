// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/verifier/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "vforge/core/error.hpp"

namespace vforge {

std::optional<double> roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw data_error("length-mismatch", "scores and labels differ in length");
  }
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double average_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] != 0) {
        positive_rank_sum += average_rank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) return std::nullopt;
  const double p = static_cast<double>(positives);
  return (positive_rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(negatives));
}

VerifierMetrics evaluate_scores(const AdapterDataset& dataset, std::span<const double> scores) {
  if (scores.size() != dataset.examples.size()) {
    throw data_error("length-mismatch", "one score per example is required");
  }
  VerifierMetrics metrics;
  std::vector<double> kept_scores;
  std::vector<int> kept_labels;
  std::size_t correct_at_half = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const AdapterExample& example = dataset.examples[i];
    if (example.is_gold_positive) continue;
    kept_scores.push_back(scores[i]);
    kept_labels.push_back(example.label ? 1 : 0);
    if ((scores[i] >= 0.5) == example.label) ++correct_at_half;
  }
  metrics.examples = kept_scores.size();
  if (metrics.examples == 0) return metrics;
  metrics.auc = roc_auc(kept_scores, kept_labels);
  metrics.accuracy_at_half = static_cast<double>(correct_at_half) / static_cast<double>(metrics.examples);

  std::size_t top1_correct = 0;
  for (const auto& [problem_id, positions] : dataset.per_problem) {
    const AdapterExample* best = nullptr;
    double best_score = 0.0;
    for (std::size_t idx : positions) {
      const AdapterExample& example = dataset.examples[idx];
      if (example.is_gold_positive) continue;
      if (best == nullptr || scores[idx] > best_score ||
          (scores[idx] == best_score && example.candidate_index < best->candidate_index)) {
        best = &example;
        best_score = scores[idx];
      }
    }
    if (best == nullptr) continue;
    ++metrics.problems;
    if (best->label) ++top1_correct;
  }
  if (metrics.problems > 0) {
    metrics.top1_correct_rate = static_cast<double>(top1_correct) / static_cast<double>(metrics.problems);
  }
  return metrics;
}

VerifierMetrics evaluate_verifier(const VerifierModel& model, const AdapterDataset& dataset) {
  std::vector<std::string> texts;
  texts.reserve(dataset.examples.size());
  for (const auto& example : dataset.examples) texts.push_back(example.text);
  const std::vector<double> scores = model.score_batch(texts);
  return evaluate_scores(dataset, scores);
}

}  // namespace vforge
