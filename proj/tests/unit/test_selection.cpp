// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/random.hpp"
#include "vforge/selection/cost.hpp"
#include "vforge/selection/judge.hpp"
#include "vforge/selection/report.hpp"
#include "vforge/selection/select.hpp"

namespace vforge {
namespace {

std::vector<Candidate> with_answers(const std::vector<std::string>& answers) {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    Candidate c;
    c.index = static_cast<int>(i + 1);
    if (!answers[i].empty()) c.answer = AnswerValue{answers[i]};
    out.push_back(c);
  }
  return out;
}

std::vector<Candidate> with_labels(const std::vector<int>& labels) {
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Candidate c;
    c.index = static_cast<int>(i + 1);
    c.label = labels[i] != 0;
    out.push_back(c);
  }
  return out;
}

Problem yes_no(const std::string& id, const std::string& gold) {
  Problem p;
  p.id = id;
  p.task = TaskKind::kYesNo;
  p.question = id;
  p.gold = AnswerValue{gold};
  return p;
}

TEST(BestOfK, CaseStudySelectsEight) {
  const auto scored = fixture::case_study_candidates();
  const auto& best = best_of_k(scored);
  EXPECT_EQ(best.candidate.index, 8);
  EXPECT_EQ(best.candidate.answer->canonical, "B");
}

TEST(BestOfK, SingleAndTiesAndEmpty) {
  std::vector<ScoredCandidate> one = {{with_answers({"A"})[0], 0.3}};
  EXPECT_EQ(best_of_k(one).candidate.index, 1);
  auto five = with_answers({"A", "B", "C", "D", "A"});
  std::vector<ScoredCandidate> tied;
  const double scores[] = {0.1, 0.9, 0.2, 0.3, 0.9};
  for (std::size_t i = 0; i < five.size(); ++i) tied.push_back({five[i], scores[i]});
  EXPECT_EQ(best_of_k(tied).candidate.index, 2);
  EXPECT_THROW(best_of_k({}), Error);
}

TEST(BestOfK, ArgmaxInvariantUnderMonotoneTransforms) {
  Rng rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    auto candidates = with_answers(std::vector<std::string>(1 + rng.below(10), "A"));
    std::vector<ScoredCandidate> scored;
    for (auto& c : candidates) scored.push_back({c, std::round(rng.uniform() * 20) / 20});
    const int base = best_of_k(scored).candidate.index;
    for (auto transform : {+[](double s) { return std::log(s + 1e-3); }, +[](double s) { return s * s * s; },
                           +[](double s) { return 1 / (1 + std::exp(-10 * s)); }}) {
      auto moved = scored;
      for (auto& item : moved) item.score = transform(item.score);
      EXPECT_EQ(best_of_k(moved).candidate.index, base);
    }
  }
}

TEST(SelfConsistency, Examples) {
  const auto cs = fixture::case_study_candidates();
  std::vector<Candidate> plain;
  for (const auto& s : cs) plain.push_back(s.candidate);
  EXPECT_EQ(self_consistency(plain)->canonical, "D");
  EXPECT_EQ(self_consistency(with_answers({"B"}))->canonical, "B");
  EXPECT_EQ(self_consistency(with_answers({"A", "B"}))->canonical, "A");
  EXPECT_EQ(self_consistency(with_answers({"", "", "C"}))->canonical, "C");
  EXPECT_FALSE(self_consistency(with_answers({"", ""})).has_value());
}

TEST(SelfConsistency, PermutationInvariantWhenNoTie) {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> answers;
    for (int i = 0; i < 8; ++i) answers.push_back(std::string(1, static_cast<char>('A' + rng.below(3))));
    std::map<std::string, int> votes;
    for (const auto& a : answers) ++votes[a];
    int top = 0, holders = 0;
    for (const auto& [_, v] : votes) top = std::max(top, v);
    for (const auto& [_, v] : votes) holders += v == top;
    const auto original = self_consistency(with_answers(answers));
    rng.shuffle(answers);
    const auto shuffled = self_consistency(with_answers(answers));
    if (holders == 1) {
      EXPECT_EQ(original, shuffled);
    } else {
      // Tied: the winner is whichever tied answer shows up first.
      EXPECT_EQ(votes[shuffled->canonical], top);
    }
  }
}

TEST(Oracle, Examples) {
  EXPECT_EQ(oracle_select(with_labels({0, 0, 1, 0})).index, 3);
  const auto& none = oracle_select(with_labels({0, 0, 0}));
  EXPECT_EQ(none.index, 1);
  EXPECT_FALSE(*none.label);
  EXPECT_THROW(oracle_select({}), Error);
  EXPECT_EQ(first_sample(with_labels({0, 1})).index, 1);
}

TEST(Oracle, AccuracyIsFractionWithAnyCorrect) {
  Rng rng(3);
  int any = 0;
  int oracle_hits = 0;
  for (int p = 0; p < 500; ++p) {
    std::vector<int> labels(8);
    for (auto& z : labels) z = rng.uniform() < 0.1;
    any += oracle::oracle_correct(labels);
    oracle_hits += *oracle_select(with_labels(labels)).label;
  }
  EXPECT_EQ(any, oracle_hits);
}

TEST(Evaluate, AccuracyDeltaAndFailures) {
  std::vector<Problem> problems = {yes_no("a", "yes"), yes_no("b", "no"), yes_no("c", "yes"), yes_no("d", "no")};
  std::vector<Selection> three_right = {{"a", 1, AnswerValue{"yes"}}, {"b", 2, AnswerValue{"no"}},
                                        {"c", 1, AnswerValue{"yes"}}, {"d", 1, AnswerValue{"yes"}}};
  const auto report = evaluate("best-of-k", three_right, problems);
  EXPECT_DOUBLE_EQ(report.accuracy, 75.0);
  EXPECT_EQ(format_percent(report.accuracy), "75.00");
  std::vector<Selection> failed;
  for (const auto& p : problems) failed.push_back({p.id, 1, std::nullopt});
  const auto zero = evaluate("first-sample", failed, problems);
  EXPECT_DOUBLE_EQ(zero.accuracy, 0.0);
  const auto with_delta = evaluate("best-of-k", three_right, problems, &zero);
  EXPECT_DOUBLE_EQ(*with_delta.delta_vs_base, 75.0);
  EXPECT_EQ(with_delta.baseline_method, "first-sample");
  std::vector<Selection> missing(three_right.begin(), three_right.end() - 1);
  EXPECT_THROW(evaluate("x", missing, problems), Error);
  const auto json = with_delta.to_json();
  for (const char* key : {"method", "n", "accuracy", "delta_vs_base", "per_problem", "cost"}) {
    EXPECT_TRUE(json.contains(key)) << key;
  }
  EXPECT_EQ(json["per_problem"][0]["problem_id"], "a");
  EXPECT_EQ(json["per_problem"][3]["correct"], false);
}

TEST(Evaluate, PublishedDeltaFormatting) {
  EXPECT_EQ(format_percent(62.90 - 16.13, true), "+46.77");
  EXPECT_EQ(format_percent(16.13 - 62.90, true), "-46.77");
}

TEST(Judge, TruthTable) {
  EXPECT_EQ(win_tie_lose(3, 1, 0.9, 0.2), Judgement::kWin);
  EXPECT_EQ(win_tie_lose(1, 3, 0.2, 0.9), Judgement::kWin);
  EXPECT_EQ(win_tie_lose(2, 2, 0.9, 0.2), Judgement::kTie);
  EXPECT_EQ(win_tie_lose(1, 3, 0.9, 0.2), Judgement::kLose);
  EXPECT_EQ(win_tie_lose(3, 1, 0.2, 0.9), Judgement::kLose);
  EXPECT_EQ(win_tie_lose(3, 1, 0.5, 0.5), Judgement::kLose);
  EXPECT_EQ(win_tie_lose(2, 2, 0.5, 0.5), Judgement::kTie);
  EXPECT_EQ(to_string(Judgement::kWin), "win");
}

Money usd(const char* text) { return Money::parse(text); }

TEST(Cost, PublishedRates) {
  const auto prices = PriceTable::published_defaults();
  const auto base = estimate_cost({{"generation", "base", 1'000'000, 0}}, prices);
  EXPECT_EQ(base.total(), usd("1"));
  EXPECT_EQ(base.total().to_cents_string(), "$1.00");
  const auto tuned = estimate_cost({{"inference", "fine-tuned", 1'000'000, 1'000'000}}, prices);
  EXPECT_EQ(tuned.phases.at(0).input, usd("3"));
  EXPECT_EQ(tuned.phases.at(0).output, usd("6"));
  EXPECT_EQ(tuned.total().to_cents_string(), "$9.00");
  EXPECT_EQ(tuned.inference_column, usd("9"));
  const auto training = estimate_cost({{"training", "fine-tuned", 0, 0, 1'000'000}}, prices);
  EXPECT_EQ(training.training_column, usd("8"));
  EXPECT_EQ(estimate_cost({{"generation", "base"}}, prices).total().to_cents_string(), "$0.00");
  EXPECT_THROW(estimate_cost({{"generation", "gpt-x", 1, 1}}, prices), Error);
}

TEST(Cost, LinearAndExact) {
  PriceTable prices;
  prices.models["m"] = {usd("0.15"), usd("0.6"), usd("8"), usd("1.2")};
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    PhaseUsage a{"generation", "m", static_cast<std::int64_t>(rng.below(5'000'000)),
                 static_cast<std::int64_t>(rng.below(5'000'000)), static_cast<std::int64_t>(rng.below(9'000'000)),
                 static_cast<std::int64_t>(rng.below(10'000))};
    PhaseUsage b{"generation", "m", static_cast<std::int64_t>(rng.below(5'000'000)),
                 static_cast<std::int64_t>(rng.below(5'000'000)), 0, 0};
    PhaseUsage sum = a;
    sum.input_tokens += b.input_tokens;
    sum.output_tokens += b.output_tokens;
    const Money separate = estimate_cost({a}, prices).total() + estimate_cost({b}, prices).total();
    EXPECT_EQ(estimate_cost({sum}, prices).total(), separate);
    EXPECT_EQ(estimate_cost({a, b}, prices).total(), separate);
  }
}

TEST(Cost, MoneyParsingAndFormatting) {
  EXPECT_EQ(usd("$0.000002").picodollars(), 2'000'000);
  EXPECT_EQ(usd("1.5").to_exact_string(), "1.5");
  EXPECT_EQ(usd("0.005").to_cents_string(), "$0.01");
  EXPECT_EQ(usd("0.0049").to_cents_string(), "$0.00");
  for (const char* bad : {"-1", "abc", "1.0000000000001", "", "1.2.3"}) EXPECT_THROW(usd(bad), Error) << bad;
  const auto table = PriceTable::published_defaults();
  const auto back = PriceTable::from_json(table.to_json());
  EXPECT_EQ(back.at("fine-tuned").output_per_1m, usd("6"));
  EXPECT_EQ(*back.at("fine-tuned").training_per_1m, usd("8"));
}

}  // namespace
}  // namespace vforge
