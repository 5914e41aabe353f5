// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/runner/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "vforge/core/answer.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/hash.hpp"
#include "vforge/core/jsonl.hpp"
#include "vforge/core/log.hpp"
#include "vforge/gateway/cache.hpp"
#include "vforge/gateway/complete.hpp"
#include "vforge/gateway/mock_backend.hpp"
#include "vforge/gateway/sampler.hpp"
#include "vforge/pipeline/io.hpp"
#include "vforge/runner/audit.hpp"
#include "vforge/runner/manifest.hpp"
#include "vforge/selection/report.hpp"
#include "vforge/selection/select.hpp"
#include "vforge/verifier/checkpoint.hpp"
#include "vforge/verifier/metrics.hpp"

namespace vforge {
namespace fs = std::filesystem;
namespace {

constexpr const char* kTrainCandidates = "candidates.train.jsonl";
constexpr const char* kTestCandidates = "candidates.test.jsonl";
constexpr const char* kDatasetStats = "dataset_stats.json";

// Collects what a command read and wrote, then appends it to the manifest.
class RunRecorder {
 public:
  RunRecorder(std::string command, const RunConfig& config)
      : config_(config), start_(std::chrono::steady_clock::now()) {
    record_.command = std::move(command);
    record_.started_at = utc_timestamp();
    record_.config = config.snapshot_json();
  }

  void input(const fs::path& path) {
    if (fs::exists(path)) record_.input_hashes[path.string()] = sha256_file_hex(path);
  }
  void artifact(const fs::path& path) { record_.artifacts.push_back(path.string()); }
  ManifestRecord& record() { return record_; }

  void commit() {
    record_.finished_at = utc_timestamp();
    record_.timings_s["total"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    record_.run_id = make_run_id(record_.command, record_.config, record_.input_hashes, record_.started_at);
    append_manifest(config_.out_dir / "manifest.jsonl", record_);
  }

 private:
  const RunConfig& config_;
  ManifestRecord record_;
  std::chrono::steady_clock::time_point start_;
};

std::vector<Problem> load_problems(const fs::path& path, const char* key) {
  if (path.empty()) throw config_error("missing-path", std::string(key) + " is not set");
  if (!fs::exists(path)) throw config_error("missing-path", std::string(key) + " does not exist: " + path.string());
  return read_problems(path);
}

std::vector<Candidate> load_candidates(const fs::path& path) {
  if (!fs::exists(path)) {
    throw data_error("missing-candidates", "no candidates at " + path.string() + "; run generate first");
  }
  return read_candidates(path);
}

void write_json_file(const fs::path& path, const nlohmann::json& value) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << value.dump(2) << '\n';
    if (!out) throw data_error("io-error", "cannot write " + path.string());
  }
  fs::rename(tmp, path);
}

nlohmann::json read_json_file(const fs::path& path, const char* missing_code) {
  std::ifstream in(path);
  if (!in) throw data_error(missing_code, "cannot read " + path.string());
  const auto value = nlohmann::json::parse(in, nullptr, false);
  if (value.is_discarded()) throw data_error("bad-json", path.string() + " is not valid JSON");
  return value;
}

// Candidates per problem, restricted to indices 1..k and labeled.
std::map<std::string, std::vector<Candidate>> labeled_by_problem(const std::vector<Problem>& problems,
                                                                 const std::vector<Candidate>& candidates,
                                                                 int k) {
  std::map<std::string, std::vector<Candidate>> grouped;
  for (const Candidate& candidate : candidates) {
    if (candidate.index <= k) grouped[candidate.problem_id].push_back(candidate);
  }
  std::map<std::string, std::vector<Candidate>> labeled;
  for (const Problem& problem : problems) {
    auto it = grouped.find(problem.id);
    labeled[problem.id] =
        it == grouped.end() ? std::vector<Candidate>{} : label_candidates(problem, std::move(it->second));
  }
  return labeled;
}

std::vector<Candidate> flatten(const std::vector<Problem>& problems,
                               const std::map<std::string, std::vector<Candidate>>& grouped) {
  std::vector<Candidate> out;
  for (const Problem& problem : problems) {
    const auto& group = grouped.at(problem.id);
    out.insert(out.end(), group.begin(), group.end());
  }
  return out;
}

TokenUsage usage_of(const std::vector<Candidate>& candidates) {
  TokenUsage total;
  for (const Candidate& candidate : candidates) total += candidate.usage;
  return total;
}

std::string objective_name(const RunConfig& config) { return std::string(to_string(config.train.objective)); }

std::string table_row(const EvalReport& report) {
  std::ostringstream line;
  line << std::left << std::setw(18) << report.method << std::right << std::setw(8)
       << format_percent(report.accuracy);
  if (report.delta_vs_base) line << std::setw(9) << format_percent(*report.delta_vs_base, true);
  return line.str();
}

}  // namespace

CommandResult cmd_generate(const RunConfig& config) {
  RunRecorder recorder("generate", config);
  const std::vector<Problem> train = load_problems(config.train_problems, "paths.train_problems");
  std::vector<Problem> test;
  if (!config.test_problems.empty()) test = load_problems(config.test_problems, "paths.test_problems");
  recorder.input(config.train_problems);
  if (!test.empty()) recorder.input(config.test_problems);
  fs::create_directories(config.out_dir);

  MockProfile profile = config.mock;
  std::vector<Problem> everything = train;
  everything.insert(everything.end(), test.begin(), test.end());
  for (const Problem& problem : everything) profile.add_to_key(problem);
  auto backend = make_backend(config.backend, &profile);
  PrivacyAudit audit(everything, config.prompt_template);
  backend->set_observer(audit.observer());
  ResponseCache cache(config.cache_path);
  RetryPolicy retry;
  retry.jitter_seed = config.seeds.generation;

  struct Split {
    const char* name;
    const std::vector<Problem>* problems;
    std::uint64_t seed;
    const char* phase;
    const char* file;
  };
  const Split splits[] = {{"train", &train, config.seeds.generation, "generation", kTrainCandidates},
                          {"test", &test, config.seeds.inference, "inference", kTestCandidates}};

  CommandResult result;
  std::ostringstream summary;
  std::vector<std::string> short_splits;
  int backend_calls = 0;
  for (const Split& split : splits) {
    if (split.problems->empty()) continue;
    GenerationRequest decoding = config.decoding;
    decoding.seed = split.seed;
    std::vector<Candidate> candidates;
    TokenUsage billed;
    TokenUsage total;
    int short_problems = 0;
    int missing = 0;
    for (const Problem& problem : *split.problems) {
      SampleOutcome outcome =
          sample_candidates(problem, config.k, *backend, decoding, &cache, config.prompt_template, retry);
      if (outcome.shortfall > 0) ++short_problems;
      missing += outcome.shortfall;
      billed += outcome.billed;
      total += outcome.total;
      backend_calls += outcome.backend_calls;
      for (Candidate& candidate : outcome.candidates) candidates.push_back(std::move(candidate));
    }
    const fs::path path = config.out_dir / split.file;
    write_candidates(path, candidates);
    recorder.artifact(path);
    recorder.record().billed.push_back(
        {split.phase, config.generator_price_model, billed.prompt_tokens, billed.completion_tokens, 0, 0});
    recorder.record().total.push_back(
        {split.phase, config.generator_price_model, total.prompt_tokens, total.completion_tokens, 0, 0});
    recorder.record().shortfall[split.name] = {{"problems", split.problems->size()},
                                               {"short_problems", short_problems},
                                               {"missing_candidates", missing}};
    const double fraction = static_cast<double>(short_problems) / static_cast<double>(split.problems->size());
    if (fraction > config.max_shortfall_fraction) short_splits.push_back(split.name);
    summary << split.name << ": " << candidates.size() << " candidates for " << split.problems->size()
            << " problems, " << short_problems << " short\n";
  }
  recorder.record().details["backend_calls"] = backend_calls;
  recorder.record().details["backend_attempts"] = backend->attempts();
  recorder.record().details["privacy"] = audit.summary();
  recorder.artifact(config.cache_path);
  recorder.commit();

  summary << "backend calls: " << backend_calls << ", outbound requests audited: " << audit.requests()
          << ", leaks: " << audit.leaks();
  if (audit.leaks() > 0) log::warn("privacy audit flagged " + std::to_string(audit.leaks()) + " requests");
  result.summary = summary.str();
  result.details = {{"backend_calls", backend_calls}, {"privacy", audit.summary()},
                    {"shortfall", recorder.record().shortfall}};
  if (!short_splits.empty()) {
    throw backend_error("shortfall", "more than " + format_percent(100.0 * config.max_shortfall_fraction) +
                                         "% of problems came back short in split " + short_splits.front() +
                                         "; partial outputs kept");
  }
  return result;
}

CommandResult cmd_build_dataset(const RunConfig& config) {
  RunRecorder recorder("build-dataset", config);
  const std::vector<Problem> problems = load_problems(config.train_problems, "paths.train_problems");
  const fs::path candidates_path = config.out_dir / kTrainCandidates;
  const std::vector<Candidate> candidates = load_candidates(candidates_path);
  recorder.input(config.train_problems);
  recorder.input(candidates_path);

  const auto labeled = labeled_by_problem(problems, candidates, config.k);
  DatasetOptions options = config.dataset;
  options.include_gold_positive = config.wants_gold_positives();
  AdapterDataset full = build_adapter_dataset(problems, flatten(problems, labeled), options);
  full.provenance = sha256_file_hex(candidates_path);
  auto [train, dev] = split_dataset(full, config.train_fraction, config.dev_fraction, config.seeds.training);

  const fs::path out = config.out_dir;
  write_adapter_dataset(out / "adapter_dataset.jsonl", full);
  write_adapter_dataset(out / "adapter_train.jsonl", train);
  write_adapter_dataset(out / "adapter_dev.jsonl", dev);
  for (const char* name : {"adapter_dataset.jsonl", "adapter_train.jsonl", "adapter_dev.jsonl"}) {
    recorder.artifact(out / name);
  }

  std::size_t positives = 0;
  std::size_t gold_positives = 0;
  for (const AdapterExample& example : full.examples) {
    if (example.label) ++positives;
    if (example.is_gold_positive) ++gold_positives;
  }
  nlohmann::json stats = {{"objective", objective_name(config)},
                          {"examples", full.examples.size()},
                          {"positives", positives},
                          {"negatives", full.examples.size() - positives},
                          {"gold_positives", gold_positives},
                          {"problems", full.problem_count()},
                          {"train_problems", train.problem_count()},
                          {"dev_problems", dev.problem_count()},
                          {"source_sha256", full.provenance}};

  // Stale structure files from another objective would be silently reused.
  for (const char* name : {"pairs.train.jsonl", "pairs.dev.jsonl", "infonce.train.jsonl", "infonce.dev.jsonl"}) {
    fs::remove(out / name);
  }
  if (config.train.objective == Objective::kPairwise) {
    const auto train_pairs = sample_pairwise_pairs(train, config.pair_cap, mix_seed(config.seeds.training, "pairs-train"));
    const auto dev_pairs = sample_pairwise_pairs(dev, config.pair_cap, mix_seed(config.seeds.training, "pairs-dev"));
    write_pairs(out / "pairs.train.jsonl", train, train_pairs);
    write_pairs(out / "pairs.dev.jsonl", dev, dev_pairs);
    recorder.artifact(out / "pairs.train.jsonl");
    recorder.artifact(out / "pairs.dev.jsonl");
    stats["train_pairs"] = train_pairs.size();
    stats["dev_pairs"] = dev_pairs.size();
  } else if (config.train.objective == Objective::kInfonce) {
    const auto train_batches =
        build_infonce_batches(train, config.negatives_per_batch, mix_seed(config.seeds.training, "infonce-train"));
    const auto dev_batches =
        build_infonce_batches(dev, config.negatives_per_batch, mix_seed(config.seeds.training, "infonce-dev"));
    write_infonce(out / "infonce.train.jsonl", train, train_batches.batches);
    write_infonce(out / "infonce.dev.jsonl", dev, dev_batches.batches);
    recorder.artifact(out / "infonce.train.jsonl");
    recorder.artifact(out / "infonce.dev.jsonl");
    stats["train_batches"] = train_batches.batches.size();
    stats["dev_batches"] = dev_batches.batches.size();
    stats["skipped_problems"] = train_batches.skipped + dev_batches.skipped;
  }
  write_json_file(out / kDatasetStats, stats);
  recorder.artifact(out / kDatasetStats);
  recorder.record().details = stats;
  recorder.commit();

  CommandResult result;
  std::ostringstream summary;
  summary << full.examples.size() << " examples (" << positives << " positive) over "
          << full.problem_count() << " problems; split " << train.problem_count() << " train / "
          << dev.problem_count() << " dev problems";
  result.summary = summary.str();
  result.details = stats;
  return result;
}

CommandResult cmd_train(const RunConfig& config) {
  RunRecorder recorder("train", config);
  const fs::path out = config.out_dir;
  const nlohmann::json stats = read_json_file(out / kDatasetStats, "missing-dataset");
  const std::string built_for = stats.value("objective", "");
  if (built_for != objective_name(config)) {
    throw data_error("objective-input-mismatch", "dataset was built for '" + built_for + "' but objective is '" +
                                                     objective_name(config) + "'; rerun build-dataset");
  }
  AdapterDataset train_data = read_adapter_dataset(out / "adapter_train.jsonl");
  AdapterDataset dev_data = read_adapter_dataset(out / "adapter_dev.jsonl");
  recorder.input(out / "adapter_train.jsonl");
  recorder.input(out / "adapter_dev.jsonl");

  VerifierModel model = make_verifier(train_data, config.encoder, config.vocab_size, config.seeds.training);
  std::optional<TrainingSet> train_set;
  std::optional<TrainingSet> dev_set;
  switch (config.train.objective) {
    case Objective::kBce:
      train_set = TrainingSet::examples(std::move(train_data));
      dev_set = TrainingSet::examples(std::move(dev_data));
      break;
    case Objective::kPairwise: {
      recorder.input(out / "pairs.train.jsonl");
      recorder.input(out / "pairs.dev.jsonl");
      auto train_pairs = read_pairs(out / "pairs.train.jsonl", train_data);
      auto dev_pairs = read_pairs(out / "pairs.dev.jsonl", dev_data);
      train_set = TrainingSet::pairs(std::move(train_data), std::move(train_pairs));
      dev_set = TrainingSet::pairs(std::move(dev_data), std::move(dev_pairs));
      break;
    }
    case Objective::kInfonce: {
      recorder.input(out / "infonce.train.jsonl");
      recorder.input(out / "infonce.dev.jsonl");
      auto train_batches = read_infonce(out / "infonce.train.jsonl", train_data);
      auto dev_batches = read_infonce(out / "infonce.dev.jsonl", dev_data);
      train_set = TrainingSet::batches(std::move(train_data), std::move(train_batches));
      dev_set = TrainingSet::batches(std::move(dev_data), std::move(dev_batches));
      break;
    }
  }

  TrainResult trained = train(model, *train_set, dev_set, config.train);
  trained.checkpoint.training["vocab_size_requested"] = config.vocab_size;
  const fs::path dir = config.checkpoint_dir();
  save_checkpoint(trained.checkpoint, dir);
  recorder.artifact(dir);
  const std::string metric = trained.checkpoint.training.value("dev_metric_name", "");
  recorder.record().details = {{"best_step", trained.best_step},
                               {"dev_metric_name", metric},
                               {"best_dev_metric", trained.checkpoint.training["best_dev_metric"]},
                               {"steps", trained.history.empty() ? 0 : trained.history.back().step},
                               {"parameters", trained.checkpoint.params.size()}};
  recorder.commit();

  CommandResult result;
  std::ostringstream summary;
  summary << "trained " << objective_name(config) << " verifier (" << trained.checkpoint.params.size()
          << " parameters); best dev " << metric << " = ";
  if (trained.best_dev_metric) {
    summary << std::fixed << std::setprecision(4) << *trained.best_dev_metric;
  } else {
    summary << "n/a";
  }
  summary << " at step " << trained.best_step << "; checkpoint " << dir.string();
  result.summary = summary.str();
  result.details = recorder.record().details;
  return result;
}

CommandResult cmd_infer(const RunConfig& config) {
  RunRecorder recorder("infer", config);
  Checkpoint checkpoint;
  try {
    checkpoint = load_checkpoint(config.checkpoint_dir());
  } catch (const std::exception& e) {
    throw data_error("checkpoint-load-failure", e.what());
  }
  const VerifierModel model = checkpoint.to_model();
  const std::vector<Problem> problems = load_problems(config.test_problems, "paths.test_problems");
  const fs::path candidates_path = config.out_dir / kTestCandidates;
  const auto labeled = labeled_by_problem(problems, load_candidates(candidates_path), config.k);
  recorder.input(config.test_problems);
  recorder.input(candidates_path);
  recorder.input(config.checkpoint_dir() / "params.bin");

  std::vector<std::string> texts;
  for (const Problem& problem : problems) {
    for (const Candidate& candidate : labeled.at(problem.id)) texts.push_back(concat_example(problem, candidate));
  }
  const std::vector<double> scores = model.score_batch(texts);

  std::vector<Selection> best, first, vote, oracle;
  std::vector<nlohmann::json> rows;
  std::size_t offset = 0;
  std::size_t short_problems = 0;
  for (const Problem& problem : problems) {
    const std::vector<Candidate>& group = labeled.at(problem.id);
    if (static_cast<int>(group.size()) < config.k) ++short_problems;
    if (group.empty()) {
      for (auto* list : {&best, &first, &vote, &oracle}) list->push_back({problem.id, 0, std::nullopt});
      continue;
    }
    std::vector<ScoredCandidate> scored;
    nlohmann::json score_list = nlohmann::json::array();
    for (const Candidate& candidate : group) {
      scored.push_back({candidate, scores[offset]});
      score_list.push_back(scores[offset]);
      ++offset;
    }
    const ScoredCandidate& top = best_of_k(scored);
    best.push_back({problem.id, top.candidate.index, top.candidate.answer});
    const Candidate& head = first_sample(group);
    first.push_back({problem.id, head.index, head.answer});
    const std::optional<AnswerValue> majority = self_consistency(group);
    int vote_index = 0;
    for (const Candidate& candidate : group) {
      if (majority && candidate.answer == majority && (vote_index == 0 || candidate.index < vote_index)) {
        vote_index = candidate.index;
      }
    }
    vote.push_back({problem.id, vote_index, majority});
    const Candidate& ideal = oracle_select(group);
    oracle.push_back({problem.id, ideal.index, ideal.answer});
    rows.push_back({{"problem_id", problem.id},
                    {"scores", score_list},
                    {"best_of_k", top.candidate.index},
                    {"first_sample", head.index},
                    {"self_consistency", majority ? nlohmann::json(majority->canonical) : nlohmann::json(nullptr)},
                    {"oracle", ideal.index}});
  }

  const EvalReport first_raw = evaluate("first-sample", first, problems);
  const EvalReport vote_raw = evaluate("self-consistency", vote, problems);
  const EvalReport& base = config.baseline == BaselineKind::kFirstSample ? first_raw : vote_raw;
  EvalReport report = evaluate("best-of-k", best, problems, &base);
  const EvalReport first_report = evaluate("first-sample", first, problems, &base);
  const EvalReport vote_report = evaluate("self-consistency", vote, problems, &base);
  const EvalReport oracle_report = evaluate("oracle", oracle, problems, &base);

  report.shortfall = {{"problems", problems.size()}, {"short_problems", short_problems}};
  // Cost from the usage recorded on the candidates, cached or not, so the
  // report does not depend on cache state.
  std::vector<PhaseUsage> usage;
  const TokenUsage test_usage = usage_of(flatten(problems, labeled));
  usage.push_back({"inference", config.generator_price_model, test_usage.prompt_tokens,
                   test_usage.completion_tokens, 0, 0});
  if (fs::exists(config.out_dir / kTrainCandidates)) {
    const TokenUsage train_usage = usage_of(read_candidates(config.out_dir / kTrainCandidates));
    usage.insert(usage.begin(), PhaseUsage{"generation", config.generator_price_model, train_usage.prompt_tokens,
                                           train_usage.completion_tokens, 0, 0});
  }
  report.cost = estimate_cost(usage, config.prices).to_json();

  nlohmann::json out = report.to_json();
  out["k"] = config.k;
  out["objective"] = checkpoint.training.value("objective", "");
  out["comparisons"] = {{"first-sample", first_report.to_json()},
                        {"self-consistency", vote_report.to_json()},
                        {"oracle", oracle_report.to_json()}};
  write_json_file(config.out_dir / "report.json", out);
  write_jsonl(config.out_dir / "selections.jsonl", rows);
  recorder.artifact(config.out_dir / "report.json");
  recorder.artifact(config.out_dir / "selections.jsonl");
  nlohmann::json accuracy = {{"best-of-k", report.accuracy},
                             {"first-sample", first_report.accuracy},
                             {"self-consistency", vote_report.accuracy},
                             {"oracle", oracle_report.accuracy}};
  recorder.record().details = {{"accuracy", accuracy}, {"baseline", base.method}};
  recorder.record().shortfall = report.shortfall;
  recorder.commit();

  CommandResult result;
  std::ostringstream summary;
  summary << "method            acc (%)  delta vs " << base.method << "\n";
  const EvalReport* table[] = {&first_report, &vote_report, &report, &oracle_report};
  for (const EvalReport* r : table) summary << table_row(*r) << "\n";
  summary << "n = " << report.n << " problems, k = " << config.k;
  result.summary = summary.str();
  result.details = {{"accuracy", accuracy}};
  return result;
}

CommandResult cmd_evaluate(const RunConfig& config) {
  RunRecorder recorder("evaluate", config);
  Checkpoint checkpoint;
  try {
    checkpoint = load_checkpoint(config.checkpoint_dir());
  } catch (const std::exception& e) {
    throw data_error("checkpoint-load-failure", e.what());
  }
  const std::vector<Problem> problems = load_problems(config.test_problems, "paths.test_problems");
  const fs::path candidates_path = config.out_dir / kTestCandidates;
  const auto labeled = labeled_by_problem(problems, load_candidates(candidates_path), config.k);
  recorder.input(candidates_path);
  const AdapterDataset dataset = build_adapter_dataset(problems, flatten(problems, labeled));
  const VerifierMetrics metrics = evaluate_verifier(checkpoint.to_model(), dataset);

  nlohmann::json out = {{"examples", metrics.examples},
                        {"problems", metrics.problems},
                        {"auc", metrics.auc ? nlohmann::json(*metrics.auc) : nlohmann::json(nullptr)},
                        {"accuracy_at_0.5", metrics.accuracy_at_half},
                        {"per_problem_top1_correct_rate", metrics.top1_correct_rate}};
  std::ostringstream summary;
  summary << std::fixed << std::setprecision(4) << "verifier on test candidates: auc "
          << (metrics.auc ? std::to_string(*metrics.auc) : std::string("n/a")) << ", accuracy@0.5 "
          << metrics.accuracy_at_half << ", top-1 correct rate " << metrics.top1_correct_rate;
  const fs::path report_path = config.out_dir / "report.json";
  if (fs::exists(report_path)) {
    const nlohmann::json report = read_json_file(report_path, "missing-report");
    recorder.input(report_path);
    nlohmann::json table = nlohmann::json::object();
    table[report.value("method", "best-of-k")] = report.value("accuracy", 0.0);
    const nlohmann::json comparisons = report.value("comparisons", nlohmann::json::object());
    for (const auto& [name, row] : comparisons.items()) {
      table[name] = row.value("accuracy", 0.0);
    }
    out["accuracy"] = table;
    for (const auto& [name, value] : table.items()) {
      summary << "\n" << std::left << std::setw(18) << name << format_percent(value.get<double>());
    }
  }
  write_json_file(config.out_dir / "evaluation.json", out);
  recorder.artifact(config.out_dir / "evaluation.json");
  recorder.record().details = out;
  recorder.commit();
  return {summary.str(), out};
}

CommandResult cmd_cost_report(const RunConfig& config) {
  std::vector<fs::path> manifests = config.cost_manifests;
  if (manifests.empty()) manifests.push_back(config.out_dir / "manifest.jsonl");
  std::vector<PhaseUsage> usage;
  for (const fs::path& path : manifests) {
    for (const ManifestRecord& record : read_manifest(path)) {
      usage.insert(usage.end(), record.billed.begin(), record.billed.end());
    }
  }
  const CostBreakdown breakdown = estimate_cost(usage, config.prices);

  RunRecorder recorder("cost-report", config);
  for (const fs::path& path : manifests) recorder.input(path);
  nlohmann::json out = breakdown.to_json();
  nlohmann::json sources = nlohmann::json::array();
  for (const fs::path& path : manifests) sources.push_back(path.string());
  out["manifests"] = sources;
  fs::create_directories(config.out_dir);
  write_json_file(config.out_dir / "cost_report.json", out);
  recorder.artifact(config.out_dir / "cost_report.json");
  recorder.record().details = {{"training", out["training"]}, {"inference", out["inference"]}};
  recorder.commit();

  std::ostringstream summary;
  summary << std::left << std::setw(14) << "phase" << std::setw(14) << "model" << "cost\n";
  for (const PhaseCost& cost : breakdown.phases) {
    summary << std::left << std::setw(14) << cost.phase << std::setw(14) << cost.model
            << cost.total().to_cents_string() << "\n";
  }
  summary << "Training " << breakdown.training_column.to_cents_string() << "  Inference "
          << breakdown.inference_column.to_cents_string() << "  Total " << breakdown.total().to_cents_string();
  return {summary.str(), out};
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"generate", "build-dataset", "train",
                                                 "infer",    "evaluate",      "cost-report"};
  return names;
}

CommandResult run_command(const std::string& name, const RunConfig& config) {
  if (name == "generate") return cmd_generate(config);
  if (name == "build-dataset") return cmd_build_dataset(config);
  if (name == "train") return cmd_train(config);
  if (name == "infer") return cmd_infer(config);
  if (name == "evaluate") return cmd_evaluate(config);
  if (name == "cost-report") return cmd_cost_report(config);
  throw config_error("unknown-command", "unknown subcommand '" + name + "'");
}

}  // namespace vforge
