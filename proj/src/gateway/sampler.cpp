// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/gateway/sampler.hpp"

#include <atomic>
#include <exception>
#include <optional>
#include <thread>

#include "vforge/core/answer.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/log.hpp"
#include "vforge/gateway/prompt.hpp"

namespace vforge {

SampleOutcome sample_candidates(const Problem& problem, int k, Backend& backend,
                                const GenerationRequest& decoding, ResponseCache* cache,
                                const std::string& prompt_template, const RetryPolicy& policy) {
  if (k < 1) throw config_error("invalid-k", "k must be >= 1");
  const std::string prompt =
      render_prompt(problem, prompt_template.empty() ? default_template(problem.task) : prompt_template);

  std::vector<std::optional<GenerationResult>> slots(static_cast<std::size_t>(k));
  std::vector<std::exception_ptr> fatal(static_cast<std::size_t>(k));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int j = next++; j < k; j = next++) {
      GenerationRequest request = decoding;
      request.prompt = prompt;
      request.seed = decoding.seed + static_cast<std::uint64_t>(j);
      try {
        slots[j] = cached_complete(backend, request, cache, policy);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kBackend) {
          fatal[j] = std::current_exception();
        } else {
          log::warn("problem '" + problem.id + "' sample " + std::to_string(j + 1) +
                    " dropped: " + e.what());
        }
      } catch (...) {
        fatal[j] = std::current_exception();
      }
    }
  };
  const int threads = std::min(k, std::max(1, backend.descriptor().max_parallel));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& error : fatal) {
    if (error) std::rethrow_exception(error);
  }

  SampleOutcome outcome;
  for (int j = 0; j < k; ++j) {
    if (!slots[j]) {
      ++outcome.shortfall;
      continue;
    }
    const GenerationResult& result = *slots[j];
    Candidate candidate;
    candidate.problem_id = problem.id;
    candidate.index = static_cast<int>(outcome.candidates.size()) + 1;
    candidate.raw = result.text;
    candidate.rationale = extract_rationale(result.text);
    candidate.answer = extract_final_answer(result.text, problem.task);
    candidate.usage = result.usage;
    candidate.extra["seed"] = decoding.seed + static_cast<std::uint64_t>(j);
    outcome.total += result.usage;
    if (!result.cached) {
      outcome.billed += result.usage;
      ++outcome.backend_calls;
    }
    outcome.candidates.push_back(std::move(candidate));
  }
  return outcome;
}

}  // namespace vforge
