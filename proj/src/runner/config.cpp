// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/runner/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vforge/core/error.hpp"
#include "vforge/core/hash.hpp"

namespace vforge {
namespace fs = std::filesystem;
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
  throw config_error("bad-config-value", key + " = '" + value + "' is not " + expected);
}

class Reader {
 public:
  explicit Reader(const Settings& settings) : settings_(settings) {}

  std::optional<std::string> text(const std::string& key) const { return settings_.get(key); }

  template <typename T>
  void number(const std::string& key, T& out) const {
    const auto raw = settings_.get(key);
    if (!raw) return;
    std::istringstream in(*raw);
    T value{};
    in >> value;
    if (in.fail() || !in.eof()) bad_value(key, *raw, "a number");
    if constexpr (std::is_floating_point_v<T>) {
      if (!std::isfinite(value)) bad_value(key, *raw, "a finite number");
    }
    out = value;
  }

  void boolean(const std::string& key, bool& out) const {
    const auto raw = settings_.get(key);
    if (!raw) return;
    if (*raw == "true" || *raw == "1" || *raw == "yes") {
      out = true;
    } else if (*raw == "false" || *raw == "0" || *raw == "no") {
      out = false;
    } else {
      bad_value(key, *raw, "a boolean");
    }
  }

 private:
  const Settings& settings_;
};

fs::path resolve(const fs::path& base, const std::string& value) {
  const fs::path p(value);
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

}  // namespace

Settings Settings::parse(const std::string& text, const std::string& origin) {
  Settings settings;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    // A '#' at the start or after whitespace opens a comment.
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line.erase(i);
        break;
      }
    }
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw config_error("bad-config-line", origin + ":" + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    if (key.empty()) {
      throw config_error("bad-config-line", origin + ":" + std::to_string(number) + ": empty key");
    }
    settings.values_[key] = trim(stripped.substr(eq + 1));
  }
  return settings;
}

Settings Settings::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("missing-config", "cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

void Settings::apply_environment(const std::vector<std::string>& keys) {
  for (const std::string& key : keys) {
    std::string name = "VFORGE_";
    for (char c : key) {
      name.push_back(c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    if (const char* value = std::getenv(name.c_str())) values_[key] = value;
  }
}

std::optional<std::string> Settings::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "paths.train_problems", "paths.test_problems", "paths.out_dir", "paths.cache",
      "paths.checkpoint", "backend.name", "backend.kind", "backend.endpoint", "backend.model_id",
      "backend.auth_env", "backend.timeout_s", "backend.max_retries", "backend.max_parallel",
      "backend.mock_seed", "mock.correct_rate", "mock.problem_coverage", "mock.failure_rate",
      "mock.sentinel", "mock.rationale_min_words", "mock.rationale_max_words", "k",
      "decoding.temperature", "decoding.top_p", "decoding.max_new_tokens", "prompt.template_file",
      "seed", "seeds.generation", "seeds.inference", "seeds.training", "dataset.gold_positives",
      "dataset.dedup", "dataset.train_fraction", "dataset.dev_fraction", "dataset.pair_cap",
      "dataset.negatives_per_batch", "train.objective", "train.learning_rate", "train.batch_size",
      "train.max_sequence_tokens", "train.epochs", "train.early_stop_metric", "train.eval_every",
      "train.grad_clip", "train.weight_decay", "train.verbose", "encoder.layers", "encoder.dim",
      "encoder.heads", "encoder.ff_dim", "encoder.vocab_size", "eval.baseline",
      "generate.max_shortfall_fraction", "cost.generator_model", "cost.manifests"};
  return keys;
}

fs::path RunConfig::checkpoint_dir() const { return checkpoint.value_or(out_dir / "checkpoint"); }

bool RunConfig::wants_gold_positives() const {
  return gold_positives.value_or(train.objective == Objective::kInfonce);
}

nlohmann::json RunConfig::snapshot_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [key, value] : snapshot) out[key] = value;
  return out;
}

RunConfig build_run_config(Settings settings, const fs::path& base_dir, const CliOverrides& overrides) {
  const auto& known = known_config_keys();
  for (const auto& [key, value] : settings.values()) {
    if (key.rfind("prices.", 0) == 0) continue;
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw config_error("unknown-config-key", "unknown config key '" + key + "'");
    }
  }
  settings.apply_environment(known);
  if (overrides.seed) settings.set("seed", std::to_string(*overrides.seed));
  if (overrides.k) settings.set("k", std::to_string(*overrides.k));
  if (overrides.objective) settings.set("train.objective", *overrides.objective);
  if (overrides.checkpoint) settings.set("paths.checkpoint", overrides.checkpoint->string());

  RunConfig config;
  const Reader r(settings);
  if (auto v = r.text("paths.train_problems")) config.train_problems = resolve(base_dir, *v);
  if (auto v = r.text("paths.test_problems")) config.test_problems = resolve(base_dir, *v);
  if (auto v = r.text("paths.out_dir")) config.out_dir = *v;
  config.out_dir = resolve(base_dir, config.out_dir.string());
  config.cache_path = config.out_dir / "cache.jsonl";
  if (auto v = r.text("paths.cache")) config.cache_path = resolve(base_dir, *v);
  if (auto v = r.text("paths.checkpoint")) config.checkpoint = resolve(base_dir, *v);

  r.number("seed", config.seed);
  config.seeds = {mix_seed(config.seed, "generation"), mix_seed(config.seed, "inference"),
                  mix_seed(config.seed, "training")};
  r.number("seeds.generation", config.seeds.generation);
  r.number("seeds.inference", config.seeds.inference);
  r.number("seeds.training", config.seeds.training);

  BackendDescriptor& b = config.backend;
  if (auto v = r.text("backend.name")) b.name = *v;
  if (auto v = r.text("backend.kind")) b.kind = parse_backend_kind(*v);
  if (auto v = r.text("backend.endpoint")) b.endpoint = *v;
  if (auto v = r.text("backend.model_id")) b.model_id = *v;
  if (auto v = r.text("backend.auth_env")) b.auth_env = *v;
  r.number("backend.timeout_s", b.request_timeout_s);
  r.number("backend.max_retries", b.max_retries);
  r.number("backend.max_parallel", b.max_parallel);
  if (settings.has("backend.mock_seed")) {
    std::uint64_t mock_seed = 0;
    r.number("backend.mock_seed", mock_seed);
    b.mock_seed = mock_seed;
  } else if (b.kind == BackendKind::kMock) {
    b.mock_seed = config.seed;
  }
  validate_backend(b);

  r.number("mock.correct_rate", config.mock.correct_rate);
  if (settings.has("mock.problem_coverage")) {
    double coverage = 0.0;
    r.number("mock.problem_coverage", coverage);
    if (coverage < 0.0 || coverage >= 1.0) {
      throw config_error("bad-config-value", "mock.problem_coverage must lie in [0, 1)");
    }
    config.mock_problem_coverage = coverage;
  }
  r.number("mock.failure_rate", config.mock.failure_rate);
  if (auto v = r.text("mock.sentinel")) config.mock.sentinel = *v;
  r.number("mock.rationale_min_words", config.mock.rationale_min_words);
  r.number("mock.rationale_max_words", config.mock.rationale_max_words);

  r.number("k", config.k);
  if (config.k < 1) throw config_error("invalid-k", "k must be >= 1");
  if (config.mock_problem_coverage) {
    // P(no correct sample among k) = (1 - p)^k = 1 - coverage.
    config.mock.correct_rate = 1.0 - std::pow(1.0 - *config.mock_problem_coverage, 1.0 / config.k);
  }

  r.number("decoding.temperature", config.decoding.temperature);
  r.number("decoding.top_p", config.decoding.top_p);
  r.number("decoding.max_new_tokens", config.decoding.max_new_tokens);
  if (auto v = r.text("prompt.template_file")) {
    const fs::path path = resolve(base_dir, *v);
    std::ifstream in(path);
    if (!in) throw config_error("missing-template", "cannot read prompt template " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    config.prompt_template = buffer.str();
  }

  if (auto v = r.text("dataset.gold_positives"); v && *v != "auto") {
    bool flag = false;
    r.boolean("dataset.gold_positives", flag);
    config.gold_positives = flag;
  }
  r.boolean("dataset.dedup", config.dataset.dedup);
  r.number("dataset.train_fraction", config.train_fraction);
  r.number("dataset.dev_fraction", config.dev_fraction);
  r.number("dataset.pair_cap", config.pair_cap);
  r.number("dataset.negatives_per_batch", config.negatives_per_batch);
  if (config.train_fraction <= 0.0 || config.dev_fraction <= 0.0 ||
      config.train_fraction + config.dev_fraction > 1.0 + 1e-12) {
    throw config_error("bad-config-value", "dataset fractions must be positive and sum to at most 1");
  }
  if (config.pair_cap < 1 || config.negatives_per_batch < 1) {
    throw config_error("bad-config-value", "pair_cap and negatives_per_batch must be >= 1");
  }

  TrainConfig& t = config.train;
  if (auto v = r.text("train.objective")) t.objective = parse_objective(*v);
  r.number("train.learning_rate", t.learning_rate);
  r.number("train.batch_size", t.batch_size);
  r.number("train.max_sequence_tokens", t.max_sequence_tokens);
  r.number("train.epochs", t.epochs);
  if (auto v = r.text("train.early_stop_metric")) t.early_stop_metric = *v;
  r.number("train.eval_every", t.eval_every);
  r.number("train.grad_clip", t.grad_clip);
  r.number("train.weight_decay", t.weight_decay);
  r.boolean("train.verbose", t.verbose);
  t.seed = config.seeds.training;
  t.validate();

  r.number("encoder.layers", config.encoder.layers);
  r.number("encoder.dim", config.encoder.dim);
  r.number("encoder.heads", config.encoder.heads);
  r.number("encoder.ff_dim", config.encoder.ff_dim);
  r.number("encoder.vocab_size", config.vocab_size);
  config.encoder.max_tokens = t.max_sequence_tokens;
  config.encoder.validate();
  if (config.vocab_size < 8) throw config_error("bad-config-value", "encoder.vocab_size is too small");

  if (auto v = r.text("eval.baseline")) {
    if (*v == "first-sample") {
      config.baseline = BaselineKind::kFirstSample;
    } else if (*v == "self-consistency") {
      config.baseline = BaselineKind::kSelfConsistency;
    } else {
      bad_value("eval.baseline", *v, "first-sample or self-consistency");
    }
  }
  r.number("generate.max_shortfall_fraction", config.max_shortfall_fraction);

  if (auto v = r.text("cost.generator_model")) config.generator_price_model = *v;
  if (auto v = r.text("cost.manifests")) {
    std::stringstream list(*v);
    std::string item;
    while (std::getline(list, item, ',')) {
      item = trim(item);
      if (!item.empty()) config.cost_manifests.push_back(resolve(base_dir, item));
    }
  }
  // prices.<model>.<field> = <dollars>
  nlohmann::json price_rows = config.prices.to_json();
  for (const auto& [key, value] : settings.values()) {
    if (key.rfind("prices.", 0) != 0) continue;
    const auto dot = key.rfind('.');
    const std::string model = key.substr(7, dot - 7);
    const std::string field = key.substr(dot + 1);
    if (dot <= 7 || model.empty()) {
      throw config_error("unknown-config-key", "price keys look like prices.<model>.<field>");
    }
    price_rows[model][field] = value;
  }
  for (auto& [model, row] : price_rows.items()) {
    if (!row.contains("input_per_1m") || !row.contains("output_per_1m")) {
      throw config_error("bad-price-table", "model '" + model + "' needs input_per_1m and output_per_1m");
    }
  }
  config.prices = PriceTable::from_json(price_rows);

  config.snapshot = settings.values();
  return config;
}

RunConfig load_run_config(const fs::path& path, const CliOverrides& overrides) {
  RunConfig config = build_run_config(Settings::load(path), fs::absolute(path).parent_path(), overrides);
  config.config_path = path;
  return config;
}

}  // namespace vforge
