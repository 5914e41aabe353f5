// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/gateway/complete.hpp"

#include <cmath>
#include <thread>

#include "vforge/core/error.hpp"
#include "vforge/core/hash.hpp"
#include "vforge/core/log.hpp"
#include "vforge/core/random.hpp"

namespace vforge {

GenerationResult complete(Backend& backend, const GenerationRequest& request,
                          const RetryPolicy& policy) {
  validate_request(request);
  const int max_retries = backend.descriptor().max_retries;
  Rng jitter(mix_seed(policy.jitter_seed, request.seed));
  const auto start = std::chrono::steady_clock::now();
  std::string last_error;
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    if (attempt > 0) {
      const double cap = policy.base.count() * std::pow(policy.factor, attempt - 1);
      const std::chrono::duration<double> wait(jitter.uniform() * cap);
      if (policy.sleep) {
        policy.sleep(wait);
      } else {
        std::this_thread::sleep_for(wait);
      }
    }
    try {
      GenerationResult result = backend.attempt(request);
      result.cached = false;
      result.latency_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
      return result;
    } catch (const TransientBackendError& e) {
      last_error = e.what();
      log::warn("backend '" + backend.descriptor().name + "' attempt " +
                std::to_string(attempt + 1) + " failed: " + last_error);
    }
  }
  throw backend_error("backend-unreachable",
                      "backend '" + backend.descriptor().name + "' failed after " +
                          std::to_string(max_retries + 1) + " attempts: " + last_error);
}

std::string cache_key(const BackendDescriptor& backend, const GenerationRequest& request) {
  // A JSON array keeps field boundaries unambiguous.
  const nlohmann::json tuple = {backend.model_id,       request.prompt, request.temperature,
                                request.top_p,          request.max_new_tokens, request.seed};
  return sha256_hex(tuple.dump());
}

GenerationResult cached_complete(Backend& backend, const GenerationRequest& request,
                                 ResponseCache* cache, const RetryPolicy& policy) {
  if (cache == nullptr) return complete(backend, request, policy);
  const std::string key = cache_key(backend.descriptor(), request);
  if (auto hit = cache->lookup(key)) return *hit;
  GenerationResult result = complete(backend, request, policy);
  cache->store(key, result);
  return result;
}

}  // namespace vforge
