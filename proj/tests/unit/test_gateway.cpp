// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

// Must match how the gateway library compiles httplib.
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <thread>

#include "test_support.hpp"
#include "vforge/core/answer.hpp"
#include "vforge/core/error.hpp"
#include "vforge/gateway/cache.hpp"
#include "vforge/gateway/complete.hpp"
#include "vforge/gateway/mock_backend.hpp"
#include "vforge/gateway/prompt.hpp"
#include "vforge/gateway/remote_chat_backend.hpp"
#include "vforge/gateway/sampler.hpp"

namespace vforge {
namespace {

Problem mc_problem(const std::string& id = "q1", const std::string& gold = "B") {
  Problem p;
  p.id = id;
  p.task = TaskKind::kMultipleChoice;
  p.question = "Which tract carries proprioception? [" + id + "]";
  p.options = {{"A", "Spinothalamic"}, {"B", "Dorsal columns"}, {"C", "Corticospinal"}, {"D", "Rubrospinal"}};
  p.gold = AnswerValue{gold};
  return p;
}

BackendDescriptor mock_descriptor(std::uint64_t seed = 42) {
  BackendDescriptor d;
  d.mock_seed = seed;
  return d;
}

RetryPolicy no_sleep() {
  RetryPolicy policy;
  policy.sleep = [](std::chrono::duration<double>) {};
  return policy;
}

// Fails transiently a scripted number of times, then echoes the prompt.
class ScriptedBackend final : public Backend {
 public:
  ScriptedBackend(int failures, int max_retries) : Backend(make_descriptor(max_retries)), failures_(failures) {}

 protected:
  GenerationResult send(const GenerationRequest& request, const std::string&) override {
    if (failures_-- > 0) throw TransientBackendError("scripted failure");
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
    GenerationResult r;
    r.text = "echo " + request.prompt + " #### A";
    r.usage = {3, 4};
    return r;
  }

 private:
  static BackendDescriptor make_descriptor(int max_retries) {
    BackendDescriptor d;
    d.name = "scripted";
    d.kind = BackendKind::kLocalProcess;
    d.endpoint = "unused";
    d.max_retries = max_retries;
    return d;
  }
  int failures_;
};

TEST(RenderPrompt, Substitution) {
  Problem p = mc_problem();
  p.question = "Q?";
  p.options.clear();
  p.task = TaskKind::kYesNo;
  p.gold = AnswerValue{"yes"};
  EXPECT_EQ(render_prompt(p, "Ans: {question}"), "Ans: Q?");
  EXPECT_EQ(render_prompt(p, "[{context}]{question}"), "[]Q?");
  EXPECT_EQ(render_prompt(p, "{{literal}} {question}"), "{literal} Q?");
  EXPECT_THROW(render_prompt(p, "{gold}"), Error);
  EXPECT_THROW(render_prompt(p, "{question"), Error);
}

TEST(RenderPrompt, MultipleChoiceGolden) {
  Problem p = mc_problem();
  p.question = "Which tract carries proprioception?";
  const std::string prompt = render_prompt(p, default_template(p.task));
  EXPECT_EQ(prompt, test::read_golden("render_mc.txt"));
  EXPECT_NE(prompt.find("####"), std::string::npos);
}

TEST(RenderPrompt, EveryDefaultTemplateAsksForMarker) {
  for (TaskKind task : {TaskKind::kMultipleChoice, TaskKind::kYesNoMaybe, TaskKind::kYesNo, TaskKind::kNli3Way,
                        TaskKind::kBinaryEntailment, TaskKind::kFact4Way}) {
    EXPECT_NE(default_template(task).find("\"#### <answer>\""), std::string::npos);
  }
}

TEST(MockBackend, SamePromptAndSeedIsByteIdentical) {
  MockProfile profile;
  profile.add_to_key(mc_problem());
  MockBackend backend(mock_descriptor(), profile);
  GenerationRequest req;
  req.prompt = render_prompt(mc_problem(), default_template(TaskKind::kMultipleChoice));
  req.seed = 17;
  const auto a = backend.attempt(req);
  const auto b = backend.attempt(req);
  EXPECT_EQ(a.text, b.text);
  req.seed = 18;
  bool differs = false;
  for (int s = 18; s < 30 && !differs; ++s) {
    req.seed = static_cast<std::uint64_t>(s);
    differs = backend.attempt(req).text != a.text;
  }
  EXPECT_TRUE(differs);
}

TEST(MockBackend, TemperatureZeroGivesModeAnswer) {
  MockProfile profile;
  profile.correct_rate = 0.6;
  const Problem p = mc_problem();
  profile.add_to_key(p);
  MockBackend backend(mock_descriptor(), profile);
  GenerationRequest req;
  req.prompt = render_prompt(p, default_template(p.task));
  req.temperature = 0.0;
  EXPECT_EQ(backend.mode_answer(req.prompt), "B");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    req.seed = seed;
    const auto answer = extract_final_answer(backend.attempt(req).text, p.task);
    ASSERT_TRUE(answer.has_value());
    EXPECT_EQ(answer->canonical, "B");
  }
}

TEST(MockBackend, RequiresSeed) {
  BackendDescriptor d;
  EXPECT_THROW(MockBackend(d, MockProfile{}), Error);
}

TEST(Complete, RetriesScriptedTransientFailures) {
  ScriptedBackend backend(2, 3);
  std::vector<double> sleeps;
  RetryPolicy policy;
  policy.sleep = [&](std::chrono::duration<double> d) { sleeps.push_back(d.count()); };
  GenerationRequest req;
  req.prompt = "p";
  const auto result = complete(backend, req, policy);
  EXPECT_EQ(backend.attempts(), 3);
  EXPECT_EQ(result.text, "echo p #### A");
  EXPECT_GT(result.latency_ms, 0.0);
  ASSERT_EQ(sleeps.size(), 2u);
  // Full jitter: retry n waits a draw below base * 2^n.
  EXPECT_LT(sleeps[0], 1.0);
  EXPECT_LT(sleeps[1], 2.0);
  EXPECT_GE(sleeps[0], 0.0);
}

TEST(Complete, ExhaustedRetriesAreUnreachable) {
  ScriptedBackend backend(10, 3);
  GenerationRequest req;
  req.prompt = "p";
  try {
    complete(backend, req, no_sleep());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "backend-unreachable");
    EXPECT_EQ(e.exit_code(), 4);
  }
  EXPECT_EQ(backend.attempts(), 4);
}

TEST(CachedComplete, SecondIdenticalRequestIsCached) {
  test::TempDir dir;
  ResponseCache cache(dir.path() / "cache.jsonl");
  ScriptedBackend backend(0, 0);
  GenerationRequest req;
  req.prompt = "same";
  const auto first = cached_complete(backend, req, &cache, no_sleep());
  const auto second = cached_complete(backend, req, &cache, no_sleep());
  EXPECT_FALSE(first.cached);
  EXPECT_TRUE(second.cached);
  EXPECT_EQ(second.text, first.text);
  EXPECT_EQ(second.usage, first.usage);
  EXPECT_EQ(backend.attempts(), 1);

  // A fresh cache object reads the same file back.
  ResponseCache reopened(dir.path() / "cache.jsonl");
  EXPECT_TRUE(cached_complete(backend, req, &reopened, no_sleep()).cached);
  EXPECT_EQ(backend.attempts(), 1);
}

TEST(CachedComplete, DifferentSeedIsDifferentKey) {
  test::TempDir dir;
  ResponseCache cache(dir.path() / "cache.jsonl");
  ScriptedBackend backend(0, 0);
  GenerationRequest a;
  a.prompt = "same";
  a.seed = 1;
  GenerationRequest b = a;
  b.seed = 2;
  EXPECT_NE(cache_key(backend.descriptor(), a), cache_key(backend.descriptor(), b));
  cached_complete(backend, a, &cache, no_sleep());
  cached_complete(backend, b, &cache, no_sleep());
  EXPECT_EQ(backend.attempts(), 2);
  const std::string key = cache_key(backend.descriptor(), a);
  EXPECT_EQ(key.size(), 64u);
  EXPECT_EQ(key.find_first_not_of("0123456789abcdef"), std::string::npos);
  for (auto field : {&GenerationRequest::temperature, &GenerationRequest::top_p}) {
    GenerationRequest c = a;
    c.*field = 0.5;
    EXPECT_NE(cache_key(backend.descriptor(), c), key);
  }
  GenerationRequest d = a;
  d.max_new_tokens = 7;
  EXPECT_NE(cache_key(backend.descriptor(), d), key);
}

TEST(CachedComplete, DeletedCacheFileRegenerates) {
  test::TempDir dir;
  const auto path = dir.path() / "cache.jsonl";
  ResponseCache cache(path);
  ScriptedBackend backend(0, 0);
  GenerationRequest req;
  req.prompt = "x";
  cached_complete(backend, req, &cache, no_sleep());
  std::filesystem::remove(path);
  const auto again = cached_complete(backend, req, &cache, no_sleep());
  EXPECT_FALSE(again.cached);
  EXPECT_EQ(backend.attempts(), 2);
  EXPECT_TRUE(std::filesystem::exists(path));
}

TEST(CachedComplete, UnwritableCacheDegradesToUncached) {
  test::TempDir dir;
  ResponseCache cache(dir.path() / "missing-dir" / "sub" / "cache.jsonl");
  std::filesystem::create_directories(dir.path() / "missing-dir");
  std::ofstream(dir.path() / "missing-dir" / "sub") << "a file, not a directory";
  ScriptedBackend backend(0, 0);
  GenerationRequest req;
  req.prompt = "x";
  EXPECT_NO_THROW(cached_complete(backend, req, &cache, no_sleep()));
  EXPECT_NO_THROW(cached_complete(backend, req, &cache, no_sleep()));
}

TEST(SampleCandidates, KEightGivesIndicesOneToEight) {
  MockProfile profile;
  const Problem p = mc_problem();
  profile.add_to_key(p);
  MockBackend backend(mock_descriptor(), profile);
  GenerationRequest decoding;
  decoding.seed = 100;
  const auto outcome = sample_candidates(p, 8, backend, decoding, nullptr, "", no_sleep());
  ASSERT_EQ(outcome.candidates.size(), 8u);
  for (int i = 0; i < 8; ++i) {
    EXPECT_EQ(outcome.candidates[i].index, i + 1);
    EXPECT_EQ(outcome.candidates[i].problem_id, p.id);
  }
  EXPECT_EQ(outcome.shortfall, 0);
  EXPECT_EQ(outcome.backend_calls, 8);

  // Candidate i carries seed base + i - 1.
  GenerationRequest third = decoding;
  third.prompt = render_prompt(p, default_template(p.task));
  third.seed = 102;
  EXPECT_EQ(outcome.candidates[2].raw, backend.attempt(third).text);
}

TEST(SampleCandidates, KOneTemperatureZeroIsDeterministic) {
  MockProfile profile;
  const Problem p = mc_problem();
  profile.add_to_key(p);
  MockBackend backend(mock_descriptor(), profile);
  GenerationRequest decoding;
  decoding.temperature = 0.0;
  const auto a = sample_candidates(p, 1, backend, decoding, nullptr, "", no_sleep());
  const auto b = sample_candidates(p, 1, backend, decoding, nullptr, "", no_sleep());
  ASSERT_EQ(a.candidates.size(), 1u);
  EXPECT_EQ(a.candidates[0].raw, b.candidates[0].raw);
}

TEST(SampleCandidates, ShortfallWhenBackendKeepsFailing) {
  ScriptedBackend backend(1000, 0);
  GenerationRequest decoding;
  const auto outcome = sample_candidates(mc_problem(), 4, backend, decoding, nullptr, "", no_sleep());
  EXPECT_TRUE(outcome.candidates.empty());
  EXPECT_EQ(outcome.shortfall, 4);
}

TEST(SampleCandidates, MockCorrectFractionMatchesConfiguredRate) {
  MockProfile profile;
  profile.correct_rate = 0.5;
  std::vector<Problem> problems;
  for (int i = 0; i < 200; ++i) {
    problems.push_back(mc_problem("mc-" + std::to_string(i), std::string(1, static_cast<char>('A' + i % 4))));
    profile.add_to_key(problems.back());
  }
  MockBackend backend(mock_descriptor(9), profile);
  GenerationRequest decoding;
  decoding.temperature = 1.0;
  double sum = 0.0;
  for (const Problem& p : problems) {
    const auto outcome = sample_candidates(p, 8, backend, decoding, nullptr, "", no_sleep());
    int correct = 0;
    for (const Candidate& c : outcome.candidates) {
      correct += c.answer && c.answer->canonical == p.gold.canonical;
    }
    sum += correct / 8.0;
  }
  EXPECT_NEAR(sum / 200.0, 0.5, 0.05);
}

// Coverage is per problem: at least one correct among k. It must hold at the
// sampling temperature, not only at temperature 1.
TEST(SampleCandidates, MockCoverageHoldsAtSamplingTemperature) {
  MockProfile profile;
  profile.correct_rate = 1.0 - std::pow(0.3, 1.0 / 8);
  std::vector<Problem> problems;
  for (int i = 0; i < 1000; ++i) {
    problems.push_back(mc_problem("cov-" + std::to_string(i), std::string(1, static_cast<char>('A' + i % 4))));
    profile.add_to_key(problems.back());
  }
  MockBackend backend(mock_descriptor(5), profile);
  GenerationRequest decoding;
  decoding.temperature = 0.7;
  int covered = 0;
  for (const Problem& p : problems) {
    const auto outcome = sample_candidates(p, 8, backend, decoding, nullptr, "", no_sleep());
    bool any = false;
    for (const Candidate& c : outcome.candidates) any = any || (c.answer && c.answer->canonical == p.gold.canonical);
    covered += any;
  }
  // Binomial(1000, 0.7) has a standard deviation of about 0.0145.
  EXPECT_NEAR(covered / 1000.0, 0.7, 0.045);
}

TEST(SampleCandidates, RequestsNeverCarryGoldOrSecrets) {
  MockProfile profile;
  const Problem p = mc_problem();
  profile.add_to_key(p);
  BackendDescriptor d = mock_descriptor();
  d.auth_env = "VFORGE_TEST_SECRET";
  ::setenv("VFORGE_TEST_SECRET", "sk-do-not-leak", 1);
  MockBackend backend(d, profile);
  std::vector<std::string> bodies;
  backend.set_observer([&](const std::string& body) { bodies.push_back(body); });
  test::TempDir dir;
  ResponseCache cache(dir.path() / "cache.jsonl");
  sample_candidates(p, 8, backend, GenerationRequest{}, &cache, "", no_sleep());
  ASSERT_EQ(bodies.size(), 8u);
  for (const auto& body : bodies) {
    EXPECT_EQ(body.find("sk-do-not-leak"), std::string::npos);
    EXPECT_EQ(body.find("\"gold\""), std::string::npos);
  }
  EXPECT_EQ(test::read_file(cache.path()).find("sk-do-not-leak"), std::string::npos);
}

TEST(RemoteChat, TalksToLocalServer) {
  httplib::Server server;
  std::string seen_auth;
  nlohmann::json seen_body;
  int calls = 0;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    ++calls;
    if (calls == 1) {
      res.status = 503;
      return;
    }
    seen_auth = req.get_header_value("Authorization");
    seen_body = nlohmann::json::parse(req.body);
    nlohmann::json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "ok #### B"}}}}}},
                            {"usage", {{"prompt_tokens", 11}, {"completion_tokens", 5}}}};
    res.set_content(reply.dump(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  ::setenv("VFORGE_TEST_KEY", "secret-token", 1);
  BackendDescriptor d;
  d.name = "local";
  d.kind = BackendKind::kRemoteChat;
  d.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
  d.model_id = "m";
  d.auth_env = "VFORGE_TEST_KEY";
  d.request_timeout_s = 5;
  RemoteChatBackend backend(d);
  GenerationRequest req;
  req.prompt = "hello";
  req.seed = 3;
  const auto result = complete(backend, req, no_sleep());
  server.stop();
  thread.join();

  EXPECT_EQ(calls, 2);
  EXPECT_EQ(result.text, "ok #### B");
  EXPECT_EQ(result.usage.prompt_tokens, 11);
  EXPECT_EQ(result.usage.completion_tokens, 5);
  EXPECT_EQ(seen_auth, "Bearer secret-token");
  EXPECT_EQ(seen_body["model"], "m");
  EXPECT_EQ(seen_body["messages"][0]["content"], "hello");
  EXPECT_EQ(seen_body["seed"], 3);
  EXPECT_TRUE(seen_body.contains("max_tokens"));
}

TEST(RemoteChat, MalformedResponseAndBadEndpoint) {
  BackendDescriptor d;
  EXPECT_THROW(parse_chat_response(d, "{\"choices\":[]}"), Error);
  EXPECT_THROW(parse_chat_response(d, "not json"), Error);
  EXPECT_THROW(parse_endpoint("ftp://x/y"), Error);
  EXPECT_EQ(parse_endpoint("https://api.example.com/v1/chat").path, "/v1/chat");
}

}  // namespace
}  // namespace vforge
