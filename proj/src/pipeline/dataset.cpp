// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/pipeline/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "vforge/core/answer.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/hash.hpp"
#include "vforge/core/random.hpp"

namespace vforge {
namespace {

// First `count` entries of a seeded Fisher-Yates over [0, n).
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  count = std::min(count, n);
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(pool[i], pool[i + rng.below(n - i)]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace

void AdapterDataset::add(AdapterExample example) {
  per_problem[example.problem_id].push_back(examples.size());
  examples.push_back(std::move(example));
}

std::vector<std::string> AdapterDataset::problem_order() const {
  std::vector<std::string> order;
  std::set<std::string> seen;
  for (const auto& example : examples) {
    if (seen.insert(example.problem_id).second) order.push_back(example.problem_id);
  }
  return order;
}

std::vector<Candidate> label_candidates(const Problem& problem, std::vector<Candidate> candidates) {
  for (Candidate& candidate : candidates) {
    if (candidate.problem_id != problem.id) {
      throw data_error("foreign-candidate", "candidate for '" + candidate.problem_id +
                                                "' passed with problem '" + problem.id + "'");
    }
    candidate.label = candidate.answer.has_value() &&
                      answers_equal(*candidate.answer, problem.gold, problem.task);
  }
  return candidates;
}

AdapterDataset build_adapter_dataset(const std::vector<Problem>& problems,
                                     const std::vector<Candidate>& labeled,
                                     const DatasetOptions& options) {
  std::unordered_map<std::string, std::vector<const Candidate*>> by_problem;
  std::unordered_map<std::string, const Problem*> known;
  for (const Problem& problem : problems) known[problem.id] = &problem;
  for (const Candidate& candidate : labeled) {
    if (!known.contains(candidate.problem_id)) {
      throw data_error("unknown-problem-id",
                       "candidate references unknown problem '" + candidate.problem_id + "'");
    }
    if (!candidate.label) {
      throw data_error("unlabeled-candidate", "candidate " + candidate.problem_id + "#" +
                                                  std::to_string(candidate.index) +
                                                  " has no label");
    }
    by_problem[candidate.problem_id].push_back(&candidate);
  }

  AdapterDataset dataset;
  for (const Problem& problem : problems) {
    auto it = by_problem.find(problem.id);
    if (it == by_problem.end() && !options.include_gold_positive) continue;
    if (it != by_problem.end()) {
      auto& group = it->second;
      std::stable_sort(group.begin(), group.end(),
                       [](const Candidate* a, const Candidate* b) { return a->index < b->index; });
      std::set<std::string> seen_raw;
      for (const Candidate* candidate : group) {
        if (options.dedup && !seen_raw.insert(candidate->raw).second) continue;
        dataset.add({concat_example(problem, *candidate), *candidate->label, problem.id,
                     candidate->index, false});
      }
    }
    if (options.include_gold_positive) {
      Candidate gold;
      gold.problem_id = problem.id;
      gold.answer = problem.gold;
      gold.rationale = problem.solution.value_or("");
      dataset.add({concat_example(problem, gold), true, problem.id, 0, true});
    }
  }
  return dataset;
}

std::vector<PairItem> sample_pairwise_pairs(const AdapterDataset& dataset, std::size_t cap,
                                            std::uint64_t seed) {
  if (cap < 1) throw config_error("invalid-cap", "pair cap must be >= 1");
  std::vector<PairItem> pairs;
  for (const std::string& problem_id : dataset.problem_order()) {
    std::vector<std::size_t> positives;
    std::vector<std::size_t> negatives;
    for (std::size_t idx : dataset.per_problem.at(problem_id)) {
      (dataset.examples[idx].label ? positives : negatives).push_back(idx);
    }
    if (positives.empty() || negatives.empty()) continue;
    Rng rng(mix_seed(seed, problem_id));
    for (std::size_t cell : sample_without_replacement(positives.size() * negatives.size(), cap, rng)) {
      pairs.push_back({problem_id, positives[cell / negatives.size()], negatives[cell % negatives.size()]});
    }
  }
  return pairs;
}

ContrastiveBatches build_infonce_batches(const AdapterDataset& dataset,
                                         std::size_t negatives_per_batch, std::uint64_t seed) {
  if (negatives_per_batch < 1) {
    throw config_error("invalid-negatives", "negatives_per_batch must be >= 1");
  }
  ContrastiveBatches out;
  for (const std::string& problem_id : dataset.problem_order()) {
    std::optional<std::size_t> gold;
    std::vector<std::size_t> negatives;
    for (std::size_t idx : dataset.per_problem.at(problem_id)) {
      const AdapterExample& example = dataset.examples[idx];
      if (example.is_gold_positive) gold = idx;
      if (!example.label) negatives.push_back(idx);
    }
    if (!gold) {
      throw data_error("missing-gold-positive",
                       "problem '" + problem_id + "' has no gold positive; build the dataset "
                       "with gold positives for InfoNCE");
    }
    if (negatives.empty()) {
      ++out.skipped;
      continue;
    }
    Rng rng(mix_seed(seed, problem_id));
    ContrastiveBatch batch{problem_id, *gold, {}};
    for (std::size_t pick : sample_without_replacement(negatives.size(), negatives_per_batch, rng)) {
      batch.negatives.push_back(negatives[pick]);
    }
    out.batches.push_back(std::move(batch));
  }
  return out;
}

std::pair<AdapterDataset, AdapterDataset> split_dataset(const AdapterDataset& dataset,
                                                        double train_fraction,
                                                        double dev_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0) || !(dev_fraction > 0.0) || train_fraction + dev_fraction > 1.0 + 1e-12) {
    throw config_error("invalid-split", "split fractions must be positive and sum to at most 1");
  }
  std::vector<std::string> order = dataset.problem_order();
  Rng rng(mix_seed(seed, "split"));
  rng.shuffle(order);
  const double n = static_cast<double>(order.size());
  const auto n_train = static_cast<std::size_t>(std::floor(train_fraction * n + 1e-9));
  const auto n_dev = std::min(order.size() - n_train,
                              static_cast<std::size_t>(std::floor(dev_fraction * n + 1e-9)));
  if (n_train == 0 || n_dev == 0) {
    throw data_error("degenerate-split", "split of " + std::to_string(order.size()) +
                                             " problems leaves one side empty");
  }
  std::set<std::string> train_ids(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::set<std::string> dev_ids(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                                order.begin() + static_cast<std::ptrdiff_t>(n_train + n_dev));
  AdapterDataset train;
  AdapterDataset dev;
  train.provenance = dev.provenance = dataset.provenance;
  for (const AdapterExample& example : dataset.examples) {
    if (train_ids.contains(example.problem_id)) {
      train.add(example);
    } else if (dev_ids.contains(example.problem_id)) {
      dev.add(example);
    }
  }
  return {std::move(train), std::move(dev)};
}

}  // namespace vforge
