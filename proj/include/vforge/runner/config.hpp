// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vforge/gateway/backend.hpp"
#include "vforge/gateway/mock_backend.hpp"
#include "vforge/pipeline/dataset.hpp"
#include "vforge/selection/cost.hpp"
#include "vforge/verifier/encoder.hpp"
#include "vforge/verifier/trainer.hpp"

namespace vforge {

// Flat "key = value" settings with '#' comments. Keys are dotted
// ("train.learning_rate"). The environment variable VFORGE_<KEY>, with dots
// as underscores and upper-cased, overrides the file.
class Settings {
 public:
  static Settings parse(const std::string& text, const std::string& origin = "<config>");
  static Settings load(const std::filesystem::path& path);

  // Replaces values with VFORGE_* variables for every known key.
  void apply_environment(const std::vector<std::string>& keys);
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.contains(key); }
  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

enum class BaselineKind { kFirstSample, kSelfConsistency };

struct SeedBlock {
  std::uint64_t generation = 0;  // training-split candidate sampling
  std::uint64_t inference = 0;   // test-split candidate sampling
  std::uint64_t training = 0;    // verifier init, shuffles, splits, pairs
};

struct RunConfig {
  std::filesystem::path config_path;
  std::filesystem::path train_problems;
  std::filesystem::path test_problems;
  std::filesystem::path out_dir = "runs/default";
  std::filesystem::path cache_path;  // defaults to <out_dir>/cache.jsonl
  std::optional<std::filesystem::path> checkpoint;  // defaults to <out_dir>/checkpoint

  BackendDescriptor backend;
  MockProfile mock;
  // When set, the mock's per-sample correct rate is chosen so that a problem
  // has at least one correct sample among k with this probability.
  std::optional<double> mock_problem_coverage;

  int k = 8;
  GenerationRequest decoding;
  std::string prompt_template;  // empty selects the task default

  std::uint64_t seed = 0;
  SeedBlock seeds;

  DatasetOptions dataset;
  std::optional<bool> gold_positives;  // unset: only for infonce
  double train_fraction = 0.85;
  double dev_fraction = 0.15;
  std::size_t pair_cap = 8;
  std::size_t negatives_per_batch = 7;

  TrainConfig train;
  EncoderConfig encoder;
  int vocab_size = 2000;

  BaselineKind baseline = BaselineKind::kFirstSample;
  double max_shortfall_fraction = 0.10;

  PriceTable prices = PriceTable::published_defaults();
  std::string generator_price_model = "base";
  std::vector<std::filesystem::path> cost_manifests;

  // Settings as loaded, secrets excluded by construction: only the name of
  // the credential variable is ever stored.
  std::map<std::string, std::string> snapshot;

  std::filesystem::path checkpoint_dir() const;
  bool wants_gold_positives() const;
  nlohmann::json snapshot_json() const;
};

// Every key the loader understands, for documentation and env overrides.
const std::vector<std::string>& known_config_keys();

struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> k;
  std::optional<std::string> objective;
  std::optional<std::filesystem::path> checkpoint;
};

// Loads the file, applies environment then command-line overrides, and
// validates. Relative paths resolve against the config file's directory.
// Throws Error(kConfig, ...) on unknown keys, bad values or missing files.
RunConfig load_run_config(const std::filesystem::path& path, const CliOverrides& overrides = {});
RunConfig build_run_config(Settings settings, const std::filesystem::path& base_dir,
                           const CliOverrides& overrides = {});

}  // namespace vforge
