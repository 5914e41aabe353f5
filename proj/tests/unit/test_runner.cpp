// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "test_support.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/jsonl.hpp"
#include "vforge/gateway/backend.hpp"
#include "vforge/gateway/prompt.hpp"
#include "vforge/runner/audit.hpp"
#include "vforge/runner/commands.hpp"
#include "vforge/runner/config.hpp"
#include "vforge/runner/manifest.hpp"
#include "vforge/runner/synthetic.hpp"

namespace vforge {
namespace {

namespace fs = std::filesystem;

std::size_t count_lines(const fs::path& path) {
  std::ifstream in(path);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += !line.empty();
  return n;
}

// A small but complete run directory: problem files plus a config.
struct MiniRun {
  test::TempDir dir;
  fs::path config;

  MiniRun(std::size_t train_count, std::size_t test_count, const std::string& extra = "") {
    write_problems(dir.path() / "train.jsonl",
                   make_synthetic_problems({train_count, 1, "train", 4, "verified"}));
    write_problems(dir.path() / "test.jsonl", make_synthetic_problems({test_count, 2, "test", 4, "verified"}));
    config = dir.path() / "run.conf";
    std::ofstream(config) << "paths.train_problems = train.jsonl\n"
                             "paths.test_problems = test.jsonl\n"
                             "paths.out_dir = out\n"
                             "backend.kind = mock\n"
                             "mock.problem_coverage = 0.7\n"
                             "mock.sentinel = verified\n"
                             "seed = 3\n"
                             "train.learning_rate = 0.003\n"
                             "train.max_sequence_tokens = 96\n"
                             "train.epochs = 1\n"
                             "encoder.layers = 1\n"
                             "encoder.dim = 16\n"
                             "encoder.heads = 2\n"
                             "encoder.ff_dim = 32\n"
                             "encoder.vocab_size = 300\n"
                          << extra;
  }
  RunConfig load(const CliOverrides& overrides = {}) const { return load_run_config(config, overrides); }
  fs::path out() const { return dir.path() / "out"; }
};

TEST(Settings, ParsesCommentsAndRejectsGarbage) {
  const auto s = Settings::parse("# header\nk = 4   # trailing\n\nseed=9\n");
  EXPECT_EQ(s.get("k"), "4");
  EXPECT_EQ(s.get("seed"), "9");
  EXPECT_THROW(Settings::parse("just words\n"), Error);
}

TEST(RunConfigTest, DefaultsOverridesAndEnvironment) {
  MiniRun run(1, 1);
  RunConfig base = run.load();
  EXPECT_EQ(base.k, 8);
  EXPECT_EQ(base.train.batch_size, 8);
  EXPECT_EQ(base.out_dir, run.dir.path() / "out");
  EXPECT_EQ(base.cache_path, run.out() / "cache.jsonl");
  EXPECT_EQ(base.encoder.max_tokens, 96);
  // Coverage 0.7 at k = 8 means 1 - 0.3^(1/8) per sample.
  EXPECT_NEAR(base.mock.correct_rate, 1 - std::pow(0.3, 1.0 / 8), 1e-12);
  EXPECT_NE(base.seeds.generation, base.seeds.inference);

  CliOverrides overrides;
  overrides.k = 3;
  overrides.seed = 11;
  overrides.objective = "pairwise";
  const RunConfig changed = run.load(overrides);
  EXPECT_EQ(changed.k, 3);
  EXPECT_EQ(changed.seed, 11u);
  EXPECT_EQ(changed.train.objective, Objective::kPairwise);

  ::setenv("VFORGE_TRAIN_EPOCHS", "7", 1);
  EXPECT_EQ(run.load().train.epochs, 7);
  ::unsetenv("VFORGE_TRAIN_EPOCHS");
}

TEST(RunConfigTest, ErrorsAreConfigErrors) {
  MiniRun run(1, 1, "no.such.key = 1\n");
  try {
    run.load();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "unknown-config-key");
    EXPECT_EQ(e.exit_code(), 2);
  }
  MiniRun bad_k(1, 1, "k = 0\n");
  EXPECT_THROW(bad_k.load(), Error);
  MiniRun bad_objective(1, 1);
  CliOverrides o;
  o.objective = "hinge";
  EXPECT_THROW(bad_objective.load(o), Error);
}

TEST(RunConfigTest, SnapshotHoldsNoSecret) {
  ::setenv("VFORGE_TEST_API_KEY", "sk-live-123", 1);
  MiniRun run(1, 1, "backend.auth_env = VFORGE_TEST_API_KEY\n");
  EXPECT_EQ(run.load().snapshot_json().dump().find("sk-live-123"), std::string::npos);
}

TEST(Manifest, AppendAndReadBack) {
  test::TempDir dir;
  ManifestRecord record;
  record.command = "generate";
  record.started_at = utc_timestamp();
  record.run_id = make_run_id(record.command, record.config, {}, record.started_at);
  record.billed = {{"generation", "base", 10, 20}};
  record.total = {{"generation", "base", 30, 40}};
  record.artifacts = {"a.jsonl"};
  append_manifest(dir.path() / "m.jsonl", record);
  append_manifest(dir.path() / "m.jsonl", record);
  const auto back = read_manifest(dir.path() / "m.jsonl");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].billed.at(0).output_tokens, 20);
  EXPECT_EQ(back[1].total.at(0).input_tokens, 30);
  EXPECT_EQ(back[0].run_id, record.run_id);
  EXPECT_EQ(record.started_at.back(), 'Z');
  EXPECT_THROW(read_manifest(dir.path() / "missing.jsonl"), Error);
}

TEST(Audit, CleanPromptsPassAndInjectedLeaksAreCaught) {
  auto problems = make_synthetic_problems({3, 4, "a", 4, "verified"});
  PrivacyAudit audit(problems, "");
  BackendDescriptor backend;
  GenerationRequest request;
  request.prompt = render_prompt(scrub_answers(problems[0]), default_template(problems[0].task));
  audit.observe(chat_request_body(backend, request).dump());
  EXPECT_EQ(audit.leaks(), 0u);

  // The gold answer smuggled into the prompt.
  request.prompt += "\nThe correct answer is " + problems[0].gold.canonical;
  audit.observe(chat_request_body(backend, request).dump());
  // The reference solution pasted into a message.
  request.prompt = render_prompt(problems[1], default_template(problems[1].task)) + *problems[1].solution;
  audit.observe(chat_request_body(backend, request).dump());
  audit.observe("not json");
  EXPECT_EQ(audit.requests(), 4u);
  EXPECT_EQ(audit.leaks(), 3u);
  EXPECT_EQ(audit.summary()["leaks"], 3);
}

TEST(Synthetic, DeterministicAndValid) {
  const auto a = make_synthetic_problems({50, 9, "s", 4, ""});
  const auto b = make_synthetic_problems({50, 9, "s", 4, ""});
  ASSERT_EQ(a.size(), 50u);
  std::set<std::string> questions;
  std::map<std::string, int> golds;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(problem_to_json(a[i]), problem_to_json(b[i]));
    questions.insert(a[i].question);
    ++golds[a[i].gold.canonical];
    EXPECT_FALSE(a[i].solution.has_value());
  }
  EXPECT_EQ(questions.size(), 50u);
  EXPECT_GE(golds.size(), 3u);
  EXPECT_NE(problem_to_json(make_synthetic_problems({5, 10, "s", 4, ""})[0]), problem_to_json(a[0]));
  EXPECT_THROW(make_synthetic_problems({5, 1, "s", 1, ""}), Error);
}

TEST(Commands, GenerateCardinalityAndCacheReuse) {
  MiniRun run(5, 5);
  const RunConfig config = run.load();
  const auto first = cmd_generate(config);
  EXPECT_EQ(count_lines(run.out() / "candidates.train.jsonl"), 40u);
  EXPECT_EQ(count_lines(run.out() / "candidates.test.jsonl"), 40u);
  EXPECT_EQ(first.details["backend_calls"], 80);
  EXPECT_EQ(first.details["privacy"]["leaks"], 0);
  const std::string before = test::read_file(run.out() / "candidates.train.jsonl");

  const auto second = cmd_generate(config);
  EXPECT_EQ(second.details["backend_calls"], 0);
  EXPECT_EQ(test::read_file(run.out() / "candidates.train.jsonl"), before);
  const auto manifest = read_manifest(run.out() / "manifest.jsonl");
  ASSERT_EQ(manifest.size(), 2u);
  EXPECT_TRUE(manifest[1].billed.empty() || manifest[1].billed[0].input_tokens == 0);
  EXPECT_FALSE(manifest[1].total.empty());
  for (const auto& artifact : manifest[0].artifacts) EXPECT_TRUE(fs::exists(artifact)) << artifact;
}

TEST(Commands, CorruptProblemLineNamesLineNumber) {
  MiniRun run(3, 2);
  std::ofstream(run.dir.path() / "train.jsonl", std::ios::app) << "{\"id\": broken\n";
  try {
    cmd_generate(run.load());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.exit_code(), 3);
    EXPECT_NE(std::string(e.what()).find("train.jsonl:4"), std::string::npos) << e.what();
  }
}

TEST(Commands, FullPipelineIsIdempotent) {
  MiniRun run(30, 10);
  const RunConfig config = run.load();
  cmd_generate(config);
  cmd_build_dataset(config);
  EXPECT_TRUE(fs::exists(run.out() / "adapter_dataset.jsonl"));
  EXPECT_EQ(count_lines(run.out() / "adapter_dataset.jsonl"), 240u);
  cmd_train(config);
  EXPECT_TRUE(fs::exists(run.out() / "checkpoint" / "params.bin"));
  const std::string metrics = test::read_file(run.out() / "checkpoint" / "metrics.jsonl");
  const auto infer = cmd_infer(config);
  const std::string report = test::read_file(run.out() / "report.json");
  const auto json = nlohmann::json::parse(report);
  EXPECT_EQ(json["method"], "best-of-k");
  EXPECT_EQ(json["n"], 10);
  EXPECT_GE(json["comparisons"]["oracle"]["accuracy"].get<double>(), json["accuracy"].get<double>());
  cmd_evaluate(config);
  EXPECT_TRUE(fs::exists(run.out() / "evaluation.json"));
  const auto cost = cmd_cost_report(config);
  EXPECT_TRUE(cost.details.contains("training"));

  // Second pass over unchanged inputs.
  cmd_build_dataset(config);
  cmd_train(config);
  EXPECT_EQ(test::read_file(run.out() / "checkpoint" / "metrics.jsonl"), metrics);
  cmd_infer(config);
  EXPECT_EQ(test::read_file(run.out() / "report.json"), report);
}

TEST(Commands, KOneBestOfKEqualsFirstSample) {
  MiniRun run(20, 10);
  CliOverrides overrides;
  overrides.k = 1;
  const RunConfig config = run.load(overrides);
  cmd_generate(config);
  cmd_build_dataset(config);
  cmd_train(config);
  cmd_infer(config);
  const auto json = nlohmann::json::parse(test::read_file(run.out() / "report.json"));
  EXPECT_EQ(json["accuracy"], json["comparisons"]["first-sample"]["accuracy"]);
  EXPECT_EQ(json["per_problem"], json["comparisons"]["first-sample"]["per_problem"]);
}

TEST(Commands, TrainRejectsObjectiveMismatchAndMissingInputs) {
  MiniRun run(10, 5);
  EXPECT_THROW(cmd_build_dataset(run.load()), Error);  // no candidates yet
  cmd_generate(run.load());
  cmd_build_dataset(run.load());
  CliOverrides overrides;
  overrides.objective = "infonce";
  try {
    cmd_train(run.load(overrides));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "objective-input-mismatch");
  }
  overrides.objective.reset();
  overrides.checkpoint = run.dir.path() / "nowhere";
  try {
    cmd_infer(run.load(overrides));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "checkpoint-load-failure");
    EXPECT_EQ(e.exit_code(), 3);
  }
}

TEST(Commands, CostReportAddsManifests) {
  test::TempDir dir;
  ManifestRecord a;
  a.command = "generate";
  a.billed = {{"generation", "base", 400'000, 100'000}, {"inference", "base", 200'000, 0}};
  ManifestRecord b;
  b.command = "generate";
  b.billed = {{"generation", "base", 600'000, 0}, {"inference", "fine-tuned", 1'000'000, 1'000'000}};
  append_manifest(dir.path() / "a.jsonl", a);
  append_manifest(dir.path() / "b.jsonl", b);
  std::ofstream(dir.path() / "c.conf") << "paths.out_dir = out\ncost.manifests = a.jsonl, b.jsonl\n";
  const auto both = cmd_cost_report(load_run_config(dir.path() / "c.conf"));
  // 1M base input + 0.1M base output + 0.2M base input = $1.00 + $0.20 + $0.20; fine-tuned $9.
  EXPECT_EQ(both.details["training"], "$1.20");
  EXPECT_EQ(both.details["inference"], "$9.20");
  EXPECT_EQ(both.details["total"], "$10.40");
}

int run_cli(const std::string& args) {
  const std::string command = std::string(VFORGE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  MiniRun run(5, 5);
  const std::string config = run.config.string();
  EXPECT_EQ(run_cli("generate"), 2);
  EXPECT_EQ(run_cli("frobnicate --config " + config), 2);
  EXPECT_EQ(run_cli("generate --config " + config + " --objective hinge"), 2);
  EXPECT_EQ(run_cli("generate --config /does/not/exist.conf"), 2);
  EXPECT_EQ(run_cli("build-dataset --config " + config), 3);
  EXPECT_EQ(run_cli("generate --config " + config + " --k 2 --seed 5"), 0);
  EXPECT_EQ(count_lines(run.out() / "candidates.train.jsonl"), 10u);
  EXPECT_EQ(run_cli("cost-report --config " + config), 0);
}

}  // namespace
}  // namespace vforge
