// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "vforge/pipeline/dataset.hpp"
#include "vforge/verifier/checkpoint.hpp"
#include "vforge/verifier/encoder.hpp"

namespace vforge {

enum class Objective { kBce, kPairwise, kInfonce };

std::string_view to_string(Objective objective);
// Throws Error(kConfig, "unknown-objective").
Objective parse_objective(std::string_view name);

struct TrainConfig {
  Objective objective = Objective::kBce;
  double learning_rate = 2e-5;
  int batch_size = 8;  // groups per step: examples, pairs or contrastive batches
  int max_sequence_tokens = 512;
  int epochs = 3;
  std::uint64_t seed = 0;
  // "auto" picks AUC for bce and ranking accuracy otherwise; "auc",
  // "ranking_accuracy" and "top1" force one.
  std::string early_stop_metric = "auto";
  int eval_every = 0;  // steps between dev evaluations; 0 means once per epoch
  double grad_clip = 1.0;  // global L2 norm; 0 disables
  double weight_decay = 0.0;
  bool verbose = false;

  // Throws Error(kConfig, "invalid-train-config").
  void validate() const;
  nlohmann::json to_json() const;
};

// Training examples plus the structure the objective consumes. Pairs and
// contrastive batches hold positions into `dataset`.
struct TrainingSet {
  AdapterDataset dataset;
  std::variant<std::monostate, std::vector<PairItem>, std::vector<ContrastiveBatch>> structure;

  static TrainingSet examples(AdapterDataset dataset);
  static TrainingSet pairs(AdapterDataset dataset, std::vector<PairItem> pairs);
  static TrainingSet batches(AdapterDataset dataset, std::vector<ContrastiveBatch> batches);
  Objective natural_objective() const;
};

struct TrainResult {
  Checkpoint checkpoint;  // best by dev metric, or final when no dev set
  int best_step = 0;
  std::optional<double> best_dev_metric;
  std::vector<MetricRecord> history;
};

// Dev metric of `logits` (aligned with dev.dataset.examples) under `metric`.
double dev_metric_from_logits(const TrainingSet& dev, std::span<const double> logits,
                              std::string_view metric);

// Trains in place and returns the selected checkpoint. Throws
// Error(kData, "objective-input-mismatch") when a set's structure does not
// fit the objective and Error(kDivergence, "non-finite-loss") on divergence.
TrainResult train(VerifierModel& model, const TrainingSet& train_set,
                  const std::optional<TrainingSet>& dev_set, const TrainConfig& config);

// Learns a tokenizer from the training texts and initializes a model.
VerifierModel make_verifier(const AdapterDataset& train_data, EncoderConfig encoder,
                            int vocab_size, std::uint64_t seed);

}  // namespace vforge
