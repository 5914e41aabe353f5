// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vforge/core/hash.hpp"
#include "vforge/core/jsonl.hpp"
#include "vforge/core/random.hpp"
#include "vforge/runner/commands.hpp"
#include "vforge/runner/config.hpp"
#include "vforge/runner/manifest.hpp"
#include "vforge/runner/synthetic.hpp"
#include "vforge/selection/cost.hpp"
#include "vforge/selection/judge.hpp"
#include "vforge/selection/select.hpp"
#include "vforge/verifier/losses.hpp"

namespace fs = std::filesystem;
using namespace vforge;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0, double c = 0, double d = 0) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, a, b, c, d);
  return buffer;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// ---------------------------------------------------------------------------

Outcome case_study() {
  const auto scored = fixture::case_study_candidates();
  const auto& best = best_of_k(scored);
  std::vector<Candidate> plain;
  for (const auto& s : scored) plain.push_back(s.candidate);
  const auto vote = self_consistency(plain);
  const bool ok = best.candidate.index == 8 && best.candidate.answer->canonical == "B" && vote &&
                  vote->canonical == "D";
  return {ok, "best-of-k index " + std::to_string(best.candidate.index) + " answer " +
                  best.candidate.answer->canonical + ", self-consistency " + (vote ? vote->canonical : "none")};
}

Outcome loss_analytics() {
  const double ln2 = std::log(2.0);
  double worst = 0;
  const double half[] = {0.5};
  const int one[] = {1};
  worst = std::max(worst, std::abs(bce_loss(half, one) - ln2));
  const double zero[] = {0.0};
  worst = std::max(worst, std::abs(pairwise_loss(zero, zero).loss - ln2));
  for (int n : {1, 3, 7}) {
    const std::vector<double> negatives(n, -1.25);
    worst = std::max(worst, std::abs(infonce_loss(-1.25, negatives).loss - std::log(n + 1.0)));
  }
  return {worst <= 1e-9, fmt("max deviation %.3g (tolerance 1e-9)", worst)};
}

Outcome gradient_checks() {
  Rng rng(2026);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    std::vector<double> x(n), y(n);
    std::vector<int> z(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = 3 * rng.normal();
      y[i] = 3 * rng.normal();
      z[i] = static_cast<int>(rng.below(2));
    }
    const auto bce = bce_loss_from_logits(x, z);
    const auto bce_fd = oracle::numeric_gradient(
        [&](const std::vector<double>& v) { return bce_loss_from_logits(v, z).loss; }, x);
    const auto pw = pairwise_loss(x, y);
    const auto pw_fd_pos =
        oracle::numeric_gradient([&](const std::vector<double>& v) { return pairwise_loss(v, y).loss; }, x);
    const auto pw_fd_neg =
        oracle::numeric_gradient([&](const std::vector<double>& v) { return pairwise_loss(x, v).loss; }, y);
    const auto nce = infonce_loss(x[0], y);
    const auto nce_fd_pos =
        oracle::numeric_gradient([&](const std::vector<double>& v) { return infonce_loss(v[0], y).loss; }, {x[0]});
    const auto nce_fd_neg =
        oracle::numeric_gradient([&](const std::vector<double>& v) { return infonce_loss(x[0], v).loss; }, y);
    worst = std::max(worst, oracle::relative_error(nce.grad_pos, nce_fd_pos[0]));
    for (std::size_t i = 0; i < n; ++i) {
      worst = std::max(worst, oracle::relative_error(bce.grad[i], bce_fd[i]));
      worst = std::max(worst, oracle::relative_error(pw.grad_pos[i], pw_fd_pos[i]));
      worst = std::max(worst, oracle::relative_error(pw.grad_neg[i], pw_fd_neg[i]));
      worst = std::max(worst, oracle::relative_error(nce.grad_neg[i], nce_fd_neg[i]));
    }
  }
  return {worst <= 1e-4, fmt("max relative error %.3g over 3 x 50 instances (tolerance 1e-4)", worst)};
}

Outcome oracle_dominance() {
  Rng rng(99);
  std::size_t dominance_violations = 0;
  std::size_t monotone_violations = 0;
  constexpr int kPools = 1000;
  constexpr int kScorers = 20;
  // Each pool is a set of problems; accuracies are compared pool-wide.
  for (int pool = 0; pool < kPools; ++pool) {
    const std::size_t problems = 1 + rng.below(20);
    const std::size_t k = 1 + rng.below(12);
    const double rate = rng.uniform();
    std::vector<std::vector<Candidate>> labeled(problems);
    for (auto& candidates : labeled) {
      for (std::size_t i = 0; i < k; ++i) {
        Candidate c;
        c.index = static_cast<int>(i + 1);
        c.label = rng.uniform() < rate;
        candidates.push_back(c);
      }
    }
    std::size_t oracle_hits = 0;
    for (const auto& candidates : labeled) oracle_hits += *oracle_select(candidates).label;
    for (int scorer = 0; scorer < kScorers; ++scorer) {
      std::size_t best_hits = 0;
      for (const auto& candidates : labeled) {
        std::vector<ScoredCandidate> scored;
        for (const auto& c : candidates) scored.push_back({c, std::round(rng.uniform() * 10) / 10});
        best_hits += *best_of_k(scored).candidate.label;
      }
      dominance_violations += best_hits > oracle_hits;
    }
    std::size_t previous = 0;
    for (std::size_t prefix = 1; prefix <= k; ++prefix) {
      std::size_t hits = 0;
      for (const auto& candidates : labeled) {
        hits += *oracle_select(std::span<const Candidate>(candidates).first(prefix)).label;
      }
      monotone_violations += hits < previous;
      previous = hits;
    }
  }
  const bool ok = dominance_violations == 0 && monotone_violations == 0;
  return {ok, std::to_string(dominance_violations) + " dominance and " + std::to_string(monotone_violations) +
                  " prefix-monotonicity violations over 1000 pools x 20 scorers"};
}

Outcome random_scorer_calibration() {
  Rng rng(5150);
  constexpr std::size_t kProblems = 300;
  constexpr std::size_t kK = 8;
  constexpr int kSeeds = 200;
  std::vector<std::vector<Candidate>> pools(kProblems);
  double fraction_sum = 0;
  for (auto& candidates : pools) {
    const double rate = rng.uniform();
    int correct = 0;
    for (std::size_t i = 0; i < kK; ++i) {
      Candidate c;
      c.index = static_cast<int>(i + 1);
      c.label = rng.uniform() < rate;
      correct += *c.label;
      candidates.push_back(c);
    }
    fraction_sum += static_cast<double>(correct) / kK;
  }
  const double expected = fraction_sum / kProblems;
  std::vector<double> accuracies;
  for (int seed = 0; seed < kSeeds; ++seed) {
    Rng scores(mix_seed(777, static_cast<std::uint64_t>(seed)));
    std::size_t hits = 0;
    for (const auto& candidates : pools) {
      std::vector<ScoredCandidate> scored;
      for (const auto& c : candidates) scored.push_back({c, scores.uniform()});
      hits += *best_of_k(scored).candidate.label;
    }
    accuracies.push_back(static_cast<double>(hits) / kProblems);
  }
  double mean = 0;
  for (double a : accuracies) mean += a;
  mean /= kSeeds;
  double var = 0;
  for (double a : accuracies) var += (a - mean) * (a - mean);
  const double se = std::sqrt(var / (kSeeds - 1)) / std::sqrt(static_cast<double>(kSeeds));
  const bool ok = std::abs(mean - expected) <= 2 * se;
  return {ok, fmt("mean best-of-k %.4f vs mean correct fraction %.4f, |diff| %.4f <= 2 SE %.4f", mean, expected,
                  std::abs(mean - expected), 2 * se)};
}

Outcome cost_arithmetic() {
  const auto prices = PriceTable::published_defaults();
  const auto base = estimate_cost({{"generation", "base", 1'000'000, 0}}, prices);
  const auto tuned = estimate_cost({{"inference", "fine-tuned", 1'000'000, 1'000'000}}, prices);
  const bool rates = base.total() == Money::dollars(1) && base.total().to_cents_string() == "$1.00" &&
                     tuned.total() == Money::dollars(9) && tuned.total().to_cents_string() == "$9.00";

  // Two manifests priced separately and together.
  const fs::path dir = fs::temp_directory_path() / ("vforge-acceptance-cost-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  ManifestRecord a;
  a.command = "generate";
  a.billed = {{"generation", "base", 1'234'567, 89'012}, {"inference", "base", 3'456'789, 1'000}};
  ManifestRecord b;
  b.command = "generate";
  b.billed = {{"generation", "base", 765'433, 910'988}, {"inference", "fine-tuned", 1'000'000, 1'000'000}};
  append_manifest(dir / "a.jsonl", a);
  append_manifest(dir / "b.jsonl", b);
  auto report = [&](const std::string& manifests) {
    Settings settings;
    settings.set("paths.out_dir", "out-" + std::to_string(manifests.size()));
    settings.set("cost.manifests", manifests);
    return cmd_cost_report(build_run_config(settings, dir)).details;
  };
  const auto ra = report("a.jsonl");
  const auto rb = report("b.jsonl");
  const auto both = report("a.jsonl,b.jsonl");
  const Money sum = Money::parse(ra["total_exact"].get<std::string>()) +
                    Money::parse(rb["total_exact"].get<std::string>());
  const bool additive = Money::parse(both["total_exact"].get<std::string>()) == sum &&
                        sum.to_cents_string() == both["total"].get<std::string>();
  fs::remove_all(dir);
  return {rates && additive, "base $" + std::string(base.total().to_cents_string()).substr(1) + ", fine-tuned " +
                                 tuned.total().to_cents_string() + ", manifests " + ra["total"].get<std::string>() +
                                 " + " + rb["total"].get<std::string>() + " = " + both["total"].get<std::string>()};
}

Outcome judge_truth_table() {
  struct Row {
    long c1, c2;
    double s1, s2;
    Judgement expected;
  };
  const Row rows[] = {
      {3, 1, 0.9, 0.2, Judgement::kWin},   // agreeing order
      {2, 2, 0.9, 0.2, Judgement::kTie},   // equal counts
      {1, 3, 0.9, 0.2, Judgement::kLose},  // opposed order
      {1, 3, 0.2, 0.9, Judgement::kWin},   // agreeing order, reversed
      {3, 1, 0.2, 0.9, Judgement::kLose},  // opposed order, reversed
      {3, 1, 0.5, 0.5, Judgement::kLose},  // counts differ, scores equal
      {2, 2, 0.5, 0.5, Judgement::kTie},   // both equal
  };
  int wrong = 0;
  for (const Row& row : rows) wrong += win_tie_lose(row.c1, row.c2, row.s1, row.s2) != row.expected;
  return {wrong == 0, std::to_string(std::size(rows) - wrong) + "/" + std::to_string(std::size(rows)) +
                          " rows as documented"};
}

// ---------------------------------------------------------------------------
// End-to-end desk runs, shared by criteria 6, 7 and 10.

struct DeskRun {
  fs::path root;
  std::map<std::string, nlohmann::json> reports;  // objective -> report.json
  std::string bce_report_bytes;
  std::size_t leaks = 0;
  std::size_t audited = 0;
  std::map<std::string, double> seconds;
  std::string error;
};

fs::path g_desk_root;  // removed at exit once created

fs::path desk_config_path() { return fs::path(VFORGE_SOURCE_DIR) / "configs" / "desk.conf"; }

RunConfig desk_config(const fs::path& root, const std::string& out, const std::string& objective) {
  Settings settings = Settings::load(desk_config_path());
  settings.set("paths.train_problems", (root / "train.jsonl").string());
  settings.set("paths.test_problems", (root / "test.jsonl").string());
  settings.set("paths.out_dir", (root / out).string());
  CliOverrides overrides;
  overrides.objective = objective;
  return build_run_config(settings, desk_config_path().parent_path(), overrides);
}

double since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

DeskRun& desk_run() {
  static DeskRun run = [] {
    DeskRun r;
    r.root = fs::temp_directory_path() / ("vforge-acceptance-desk-" + std::to_string(::getpid()));
    fs::remove_all(r.root);
    fs::create_directories(r.root);
    g_desk_root = r.root;
    try {
      write_problems(r.root / "train.jsonl", make_synthetic_problems({300, 1, "train", 4, "verified"}));
      write_problems(r.root / "test.jsonl", make_synthetic_problems({100, 2, "test", 4, "verified"}));
      for (const std::string objective : {"bce", "pairwise", "infonce"}) {
        const auto start = std::chrono::steady_clock::now();
        const RunConfig config = desk_config(r.root, "run-a", objective);
        const auto generated = cmd_generate(config);
        r.leaks += generated.details["privacy"]["leaks"].get<std::size_t>();
        r.audited += generated.details["privacy"]["requests"].get<std::size_t>();
        cmd_build_dataset(config);
        cmd_train(config);
        cmd_infer(config);
        const std::string bytes = read_file(config.out_dir / "report.json");
        r.reports[objective] = nlohmann::json::parse(bytes);
        if (objective == "bce") r.bce_report_bytes = bytes;
        r.seconds[objective] = since(start);
        std::cout << "  [desk] " << objective << " run finished in " << fmt("%.0f", r.seconds[objective])
                  << "s" << std::endl;
      }
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    return r;
  }();
  return run;
}

double accuracy_of(const nlohmann::json& report, const std::string& method) {
  if (method == "best-of-k") return report.at("accuracy").get<double>();
  return report.at("comparisons").at(method).at("accuracy").get<double>();
}

std::string accuracy_line(const nlohmann::json& report) {
  return fmt("best-of-k %.2f, first-sample %.2f, self-consistency %.2f, oracle %.2f",
             accuracy_of(report, "best-of-k"), accuracy_of(report, "first-sample"),
             accuracy_of(report, "self-consistency"), accuracy_of(report, "oracle"));
}

Outcome desk_end_to_end() {
  DeskRun& run = desk_run();
  if (!run.reports.contains("bce")) return {false, "pipeline failed: " + run.error};
  const auto& report = run.reports.at("bce");
  const double best = accuracy_of(report, "best-of-k");
  const bool ok = best >= accuracy_of(report, "first-sample") + 20 && best >= accuracy_of(report, "self-consistency") &&
                  run.seconds.at("bce") < 600;
  return {ok, accuracy_line(report) + fmt(" (%.0fs)", run.seconds.at("bce"))};
}

Outcome objective_parity() {
  DeskRun& run = desk_run();
  std::string detail;
  bool ok = true;
  double total = 0;
  for (const std::string objective : {"pairwise", "infonce"}) {
    if (!run.reports.contains(objective)) return {false, objective + " pipeline failed: " + run.error};
    const auto& report = run.reports.at(objective);
    const double margin = accuracy_of(report, "best-of-k") - accuracy_of(report, "first-sample");
    ok = ok && margin >= 15;
    total += run.seconds.at(objective);
    detail += objective + ": " + accuracy_line(report) + fmt(" (margin %+.2f); ", margin);
  }
  total += run.seconds.at("bce");
  ok = ok && total < 1200;
  return {ok, detail + fmt("all three objectives %.0fs", total)};
}

Outcome determinism_and_privacy() {
  DeskRun& run = desk_run();
  if (run.bce_report_bytes.empty()) return {false, "first run failed: " + run.error};
  std::string second;
  std::size_t leaks = run.leaks;
  std::size_t audited = run.audited;
  try {
    // A fresh directory and cache, so every completion is requested again.
    const RunConfig config = desk_config(run.root, "run-b", "bce");
    const auto generated = cmd_generate(config);
    leaks += generated.details["privacy"]["leaks"].get<std::size_t>();
    audited += generated.details["privacy"]["requests"].get<std::size_t>();
    cmd_build_dataset(config);
    cmd_train(config);
    cmd_infer(config);
    second = read_file(config.out_dir / "report.json");
  } catch (const std::exception& e) {
    return {false, std::string("second run failed: ") + e.what()};
  }
  const bool identical = second == run.bce_report_bytes;
  return {identical && leaks == 0 && audited > 0,
          std::string("report.json ") + (identical ? "byte-identical" : "differs") + " across runs; " +
              std::to_string(leaks) + " leaks in " + std::to_string(audited) + " audited requests"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"case-study fixture", case_study},
      {"loss analytics", loss_analytics},
      {"gradient checks", gradient_checks},
      {"oracle dominance and monotonicity", oracle_dominance},
      {"random-scorer calibration", random_scorer_calibration},
      {"end-to-end desk run (bce)", desk_end_to_end},
      {"objective parity (pairwise, infonce)", objective_parity},
      {"cost arithmetic", cost_arithmetic},
      {"win/tie/lose truth table", judge_truth_table},
      {"determinism and privacy", determinism_and_privacy},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i + 1);
    if (!selected.empty() && !selected.contains(number)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += !outcome.pass;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << number << " [" << criteria[i].first
              << "] " << outcome.detail << fmt(" (%.2fs)", since(start)) << std::endl;
  }
  if (!g_desk_root.empty()) fs::remove_all(g_desk_root);
  return failures == 0 ? 0 : 1;
}
