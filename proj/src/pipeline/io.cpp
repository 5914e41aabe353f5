// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/pipeline/io.hpp"

#include <map>

#include "vforge/core/error.hpp"
#include "vforge/core/jsonl.hpp"

namespace vforge {
namespace {

using ExampleRef = std::pair<std::string, int>;

std::map<ExampleRef, std::size_t> index_examples(const AdapterDataset& dataset) {
  std::map<ExampleRef, std::size_t> index;
  for (std::size_t i = 0; i < dataset.examples.size(); ++i) {
    const auto& example = dataset.examples[i];
    index.emplace(ExampleRef{example.problem_id, example.candidate_index}, i);
  }
  return index;
}

std::size_t resolve(const std::map<ExampleRef, std::size_t>& index, const std::string& problem_id,
                    int candidate_index) {
  auto it = index.find({problem_id, candidate_index});
  if (it == index.end()) {
    throw data_error("dangling-reference", "no example " + problem_id + "#" +
                                               std::to_string(candidate_index) +
                                               " in the adapter dataset");
  }
  return it->second;
}

}  // namespace

void write_adapter_dataset(const std::filesystem::path& path, const AdapterDataset& dataset) {
  std::vector<json> rows;
  rows.reserve(dataset.examples.size());
  for (const AdapterExample& example : dataset.examples) {
    rows.push_back({{"problem_id", example.problem_id},
                    {"candidate_index", example.candidate_index},
                    {"text", example.text},
                    {"label", example.label ? 1 : 0},
                    {"is_gold_positive", example.is_gold_positive ? 1 : 0}});
  }
  write_jsonl(path, rows);
}

AdapterDataset read_adapter_dataset(const std::filesystem::path& path) {
  AdapterDataset dataset;
  dataset.provenance = path.string();
  for_each_jsonl(path, [&](const json& row, std::size_t) {
    AdapterExample example;
    try {
      example.problem_id = row.at("problem_id").get<std::string>();
      example.candidate_index = row.at("candidate_index").get<int>();
      example.text = row.at("text").get<std::string>();
      example.label = row.at("label").get<int>() != 0;
      example.is_gold_positive = row.value("is_gold_positive", 0) != 0;
    } catch (const json::exception& e) {
      throw data_error("bad-field", std::string("adapter example: ") + e.what());
    }
    dataset.add(std::move(example));
  });
  return dataset;
}

void write_pairs(const std::filesystem::path& path, const AdapterDataset& dataset,
                 const std::vector<PairItem>& pairs) {
  std::vector<json> rows;
  rows.reserve(pairs.size());
  for (const PairItem& pair : pairs) {
    rows.push_back({{"problem_id", pair.problem_id},
                    {"positive", dataset.examples.at(pair.positive).candidate_index},
                    {"negative", dataset.examples.at(pair.negative).candidate_index}});
  }
  write_jsonl(path, rows);
}

std::vector<PairItem> read_pairs(const std::filesystem::path& path, const AdapterDataset& dataset) {
  const auto index = index_examples(dataset);
  std::vector<PairItem> pairs;
  for_each_jsonl(path, [&](const json& row, std::size_t) {
    const std::string problem_id = row.at("problem_id").get<std::string>();
    pairs.push_back({problem_id, resolve(index, problem_id, row.at("positive").get<int>()),
                     resolve(index, problem_id, row.at("negative").get<int>())});
  });
  return pairs;
}

void write_infonce(const std::filesystem::path& path, const AdapterDataset& dataset,
                   const std::vector<ContrastiveBatch>& batches) {
  std::vector<json> rows;
  rows.reserve(batches.size());
  for (const ContrastiveBatch& batch : batches) {
    json negatives = json::array();
    for (std::size_t idx : batch.negatives) negatives.push_back(dataset.examples.at(idx).candidate_index);
    rows.push_back({{"problem_id", batch.problem_id},
                    {"positive", dataset.examples.at(batch.positive).candidate_index},
                    {"negatives", negatives}});
  }
  write_jsonl(path, rows);
}

std::vector<ContrastiveBatch> read_infonce(const std::filesystem::path& path,
                                           const AdapterDataset& dataset) {
  const auto index = index_examples(dataset);
  std::vector<ContrastiveBatch> batches;
  for_each_jsonl(path, [&](const json& row, std::size_t) {
    ContrastiveBatch batch;
    batch.problem_id = row.at("problem_id").get<std::string>();
    batch.positive = resolve(index, batch.problem_id, row.at("positive").get<int>());
    for (const json& negative : row.at("negatives")) {
      batch.negatives.push_back(resolve(index, batch.problem_id, negative.get<int>()));
    }
    batches.push_back(std::move(batch));
  });
  return batches;
}

}  // namespace vforge
