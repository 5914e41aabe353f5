// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "vforge/core/types.hpp"

namespace vforge {

enum class BackendKind { kRemoteChat, kLocalProcess, kMock };

std::string_view to_string(BackendKind kind);
BackendKind parse_backend_kind(std::string_view name);

struct BackendDescriptor {
  std::string name = "mock";
  BackendKind kind = BackendKind::kMock;
  std::string endpoint;  // URL for remote-chat, command line for local-process
  std::string model_id = "mock-generator";
  std::string auth_env;  // name of the env var holding the key, never the key
  double request_timeout_s = 60.0;
  int max_retries = 3;
  int max_parallel = 4;
  std::optional<std::uint64_t> mock_seed;

  // JSON pointers into the remote response body.
  std::string text_path = "/choices/0/message/content";
  std::string prompt_tokens_path = "/usage/prompt_tokens";
  std::string completion_tokens_path = "/usage/completion_tokens";
};

// Throws Error(kConfig, "invalid-backend") on violated invariants.
void validate_backend(const BackendDescriptor& backend);

struct GenerationRequest {
  std::string prompt;
  double temperature = 0.7;
  double top_p = 1.0;
  int max_new_tokens = 512;
  std::uint64_t seed = 0;
  std::vector<std::string> stop;
};

void validate_request(const GenerationRequest& request);

struct GenerationResult {
  std::string text;
  TokenUsage usage;
  std::string backend;
  bool cached = false;
  double latency_ms = 0.0;
};

nlohmann::json result_to_json(const GenerationResult& result);
GenerationResult result_from_json(const nlohmann::json& object);

// Body sent to chat-completion endpoints. Every backend kind renders it so
// outbound traffic can be audited uniformly.
nlohmann::json chat_request_body(const BackendDescriptor& backend,
                                 const GenerationRequest& request);

// Failure worth retrying: connection errors, rate limits, 5xx.
class TransientBackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using OutboundObserver = std::function<void(const std::string& body)>;

class Backend {
 public:
  explicit Backend(BackendDescriptor descriptor) : descriptor_(std::move(descriptor)) {}
  virtual ~Backend() = default;
  Backend(const Backend&) = delete;
  Backend& operator=(const Backend&) = delete;

  const BackendDescriptor& descriptor() const { return descriptor_; }

  // One attempt, no retry. Throws TransientBackendError or Error(kBackend).
  GenerationResult attempt(const GenerationRequest& request);

  // Sees the serialized request body of every attempt, before it is sent.
  void set_observer(OutboundObserver observer);

  // Attempts made so far, including failed ones.
  std::int64_t attempts() const;

 protected:
  virtual GenerationResult send(const GenerationRequest& request, const std::string& body) = 0;

 private:
  BackendDescriptor descriptor_;
  mutable std::mutex mutex_;
  OutboundObserver observer_;
  std::int64_t attempts_ = 0;
};

struct MockProfile;

// Builds the backend named by `descriptor.kind`. `mock` must be provided
// for mock backends and is ignored otherwise.
std::unique_ptr<Backend> make_backend(const BackendDescriptor& descriptor,
                                      const MockProfile* mock = nullptr);

}  // namespace vforge
