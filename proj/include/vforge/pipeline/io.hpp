// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <vector>

#include "vforge/pipeline/dataset.hpp"

namespace vforge {

// adapter_dataset.jsonl: {"problem_id", "candidate_index", "text", "label",
// "is_gold_positive"}.
void write_adapter_dataset(const std::filesystem::path& path, const AdapterDataset& dataset);
AdapterDataset read_adapter_dataset(const std::filesystem::path& path);

// pairs.jsonl: {"problem_id", "positive", "negative"} with candidate indices
// (0 is the gold positive). Reading resolves them against `dataset`.
void write_pairs(const std::filesystem::path& path, const AdapterDataset& dataset,
                 const std::vector<PairItem>& pairs);
std::vector<PairItem> read_pairs(const std::filesystem::path& path, const AdapterDataset& dataset);

// infonce.jsonl: {"problem_id", "positive", "negatives": [...]}.
void write_infonce(const std::filesystem::path& path, const AdapterDataset& dataset,
                   const std::vector<ContrastiveBatch>& batches);
std::vector<ContrastiveBatch> read_infonce(const std::filesystem::path& path,
                                           const AdapterDataset& dataset);

}  // namespace vforge
