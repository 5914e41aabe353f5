// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vforge/gateway/backend.hpp"

namespace vforge {

// Runs `endpoint` through /bin/sh once per request, writing the chat request
// body to stdin. Stdout is either a JSON object laid out like a chat
// response (read through the descriptor's pointers) or plain completion
// text. A nonzero exit status counts as a transient failure.
class ProcessBackend final : public Backend {
 public:
  explicit ProcessBackend(BackendDescriptor descriptor);

 protected:
  GenerationResult send(const GenerationRequest& request, const std::string& body) override;
};

}  // namespace vforge
