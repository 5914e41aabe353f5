// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "vforge/gateway/backend.hpp"

namespace vforge {

struct ParsedUrl {
  std::string scheme_host_port;  // "https://api.example.com:443"
  std::string path;              // "/v1/chat/completions"
};

// Throws Error(kConfig, "invalid-endpoint") for anything but http(s) URLs.
ParsedUrl parse_endpoint(const std::string& url);

// OpenAI-style chat completion endpoint. The bearer token is read from the
// environment variable named by `auth_env` at call time.
class RemoteChatBackend final : public Backend {
 public:
  explicit RemoteChatBackend(BackendDescriptor descriptor);

 protected:
  GenerationResult send(const GenerationRequest& request, const std::string& body) override;

 private:
  ParsedUrl url_;
};

// Pulls text and usage out of a response body using the descriptor's
// JSON pointers. Throws Error(kBackend, "malformed-response").
GenerationResult parse_chat_response(const BackendDescriptor& backend, const std::string& body);

}  // namespace vforge
