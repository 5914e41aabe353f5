// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>

#include "vforge/gateway/backend.hpp"
#include "vforge/gateway/cache.hpp"

namespace vforge {

// Exponential backoff with full jitter: before retry n (0-based) sleep a
// uniform draw from [0, base * factor^n).
struct RetryPolicy {
  std::chrono::duration<double> base{1.0};
  double factor = 2.0;
  std::uint64_t jitter_seed = 0;
  // Replaceable so tests do not actually wait.
  std::function<void(std::chrono::duration<double>)> sleep;
};

// One completion with retries on TransientBackendError, up to
// backend.descriptor().max_retries extra attempts. Exhaustion throws
// Error(kBackend, "backend-unreachable"); non-transient errors propagate.
GenerationResult complete(Backend& backend, const GenerationRequest& request,
                          const RetryPolicy& policy = {});

// Cache key: SHA-256 over model id and every decoding field that changes
// the output.
std::string cache_key(const BackendDescriptor& backend, const GenerationRequest& request);

// Returns the stored result with cached = true on a hit; otherwise calls
// complete() and appends the result.
GenerationResult cached_complete(Backend& backend, const GenerationRequest& request,
                                 ResponseCache* cache, const RetryPolicy& policy = {});

}  // namespace vforge
