// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "json.hpp"
#include "vforge/verifier/encoder.hpp"

namespace vforge {

struct MetricRecord {
  int step = 0;
  std::optional<double> loss;  // absent for the evaluation before training
  std::optional<double> dev_metric;
};

// A trained verifier on disk: params.bin (little-endian fp64), vocab.json,
// config.json and metrics.jsonl in one directory.
struct Checkpoint {
  EncoderConfig encoder;
  BpeTokenizer tokenizer;
  std::vector<double> params;
  // Training settings and selection outcome, stored under "training".
  nlohmann::json training = nlohmann::json::object();
  std::vector<MetricRecord> metrics;

  VerifierModel to_model() const { return VerifierModel(encoder, tokenizer, params); }
};

Checkpoint make_checkpoint(const VerifierModel& model);

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& dir);
// Throws Error(kData, "bad-checkpoint") on missing files or a size mismatch.
Checkpoint load_checkpoint(const std::filesystem::path& dir);

}  // namespace vforge
