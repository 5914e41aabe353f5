// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "vforge/core/types.hpp"
#include "vforge/gateway/backend.hpp"

namespace vforge {

// Copy of `problem` with everything a generator must not see removed: the
// gold answer, the reference solution and unknown extra fields.
Problem scrub_answers(const Problem& problem);

// Checks every outbound request body against the prompts that the
// answer-free problems render to. A body whose prompt is not one of those,
// or that contains a reference solution verbatim, counts as a leak.
class PrivacyAudit {
 public:
  PrivacyAudit(const std::vector<Problem>& problems, const std::string& prompt_template);

  void observe(const std::string& body);
  OutboundObserver observer();

  std::size_t requests() const;
  std::size_t leaks() const;
  std::vector<std::string> findings() const;
  nlohmann::json summary() const;

 private:
  std::set<std::string> allowed_prompts_;
  std::vector<std::string> solutions_;
  mutable std::mutex mutex_;
  std::size_t requests_ = 0;
  std::vector<std::string> findings_;
};

}  // namespace vforge
