// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vforge/pipeline/dataset.hpp"
#include "vforge/verifier/encoder.hpp"

namespace vforge {

struct VerifierMetrics {
  std::optional<double> auc;  // absent when only one class is present
  double accuracy_at_half = 0.0;
  // Fraction of problems whose top-scored example is correct; ties go to the
  // lowest candidate index, as in best-of-K selection.
  double top1_correct_rate = 0.0;
  std::size_t examples = 0;
  std::size_t problems = 0;
};

// Mann-Whitney rank statistic with average ranks for ties.
std::optional<double> roc_auc(std::span<const double> scores, std::span<const int> labels);

// Metrics for precomputed scores aligned with dataset.examples. Synthesized
// gold positives are skipped: they are not candidates.
VerifierMetrics evaluate_scores(const AdapterDataset& dataset, std::span<const double> scores);

VerifierMetrics evaluate_verifier(const VerifierModel& model, const AdapterDataset& dataset);

}  // namespace vforge
