// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "vforge/core/types.hpp"

namespace vforge {

struct AdapterDataset {
  std::vector<AdapterExample> examples;
  // problem id -> positions in `examples`, in insertion order.
  std::map<std::string, std::vector<std::size_t>> per_problem;
  std::string provenance;

  void add(AdapterExample example);
  // Problem ids in first-appearance order.
  std::vector<std::string> problem_order() const;
  std::size_t problem_count() const { return per_problem.size(); }
};

// Positions into one AdapterDataset.
struct PairItem {
  std::string problem_id;
  std::size_t positive = 0;
  std::size_t negative = 0;
};

struct ContrastiveBatch {
  std::string problem_id;
  std::size_t positive = 0;
  std::vector<std::size_t> negatives;
};

struct ContrastiveBatches {
  std::vector<ContrastiveBatch> batches;
  std::size_t skipped = 0;  // problems without any negative
};

// Sets each label to answers_equal(answer, gold); failed extractions get 0.
// Throws Error(kData, "foreign-candidate") if a candidate names another problem.
std::vector<Candidate> label_candidates(const Problem& problem, std::vector<Candidate> candidates);

struct DatasetOptions {
  bool include_gold_positive = false;
  // Drop candidates whose raw text repeats an earlier one for the same problem.
  bool dedup = false;
};

// One example per labeled candidate, grouped by problem in `problems` order.
// Gold positives carry the problem's reference solution as rationale (empty
// when it has none) and candidate index 0.
AdapterDataset build_adapter_dataset(const std::vector<Problem>& problems,
                                     const std::vector<Candidate>& labeled,
                                     const DatasetOptions& options = {});

// Per problem, up to `cap` distinct (positive, negative) pairs drawn uniformly
// without replacement from the cross product.
std::vector<PairItem> sample_pairwise_pairs(const AdapterDataset& dataset, std::size_t cap,
                                            std::uint64_t seed);

// Per problem with at least one negative: its gold positive plus up to
// `negatives_per_batch` negatives sampled without replacement.
ContrastiveBatches build_infonce_batches(const AdapterDataset& dataset,
                                         std::size_t negatives_per_batch, std::uint64_t seed);

// Splits by problem id after a seeded shuffle of the problem order.
// Throws Error(kData, "degenerate-split") if either side would be empty.
std::pair<AdapterDataset, AdapterDataset> split_dataset(const AdapterDataset& dataset,
                                                        double train_fraction,
                                                        double dev_fraction, std::uint64_t seed);

}  // namespace vforge
