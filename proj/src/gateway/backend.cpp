// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/gateway/backend.hpp"

#include "vforge/core/error.hpp"
#include "vforge/gateway/mock_backend.hpp"
#include "vforge/gateway/process_backend.hpp"
#include "vforge/gateway/remote_chat_backend.hpp"

namespace vforge {

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::kRemoteChat: return "remote-chat";
    case BackendKind::kLocalProcess: return "local-process";
    case BackendKind::kMock: return "mock";
  }
  return "unknown";
}

BackendKind parse_backend_kind(std::string_view name) {
  if (name == "remote-chat") return BackendKind::kRemoteChat;
  if (name == "local-process") return BackendKind::kLocalProcess;
  if (name == "mock") return BackendKind::kMock;
  throw config_error("invalid-backend", "unknown backend kind '" + std::string(name) + "'");
}

void validate_backend(const BackendDescriptor& backend) {
  auto fail = [&](const std::string& why) {
    throw config_error("invalid-backend", "backend '" + backend.name + "': " + why);
  };
  if (backend.max_parallel < 1) fail("max_parallel must be >= 1");
  if (backend.max_retries < 0) fail("max_retries must be >= 0");
  if (backend.request_timeout_s <= 0) fail("request_timeout must be positive");
  if (backend.kind == BackendKind::kMock && !backend.mock_seed) fail("mock backends require a seed");
  if (backend.kind != BackendKind::kMock && backend.endpoint.empty()) fail("endpoint is required");
}

void validate_request(const GenerationRequest& request) {
  if (!(request.temperature >= 0.0)) {
    throw config_error("invalid-request", "temperature must be non-negative");
  }
  if (!(request.top_p > 0.0 && request.top_p <= 1.0)) {
    throw config_error("invalid-request", "top_p must lie in (0, 1]");
  }
  if (request.max_new_tokens < 1) {
    throw config_error("invalid-request", "max_new_tokens must be positive");
  }
}

nlohmann::json result_to_json(const GenerationResult& result) {
  return {{"text", result.text},
          {"usage",
           {{"prompt_tokens", result.usage.prompt_tokens},
            {"completion_tokens", result.usage.completion_tokens}}},
          {"backend", result.backend},
          {"latency_ms", result.latency_ms}};
}

GenerationResult result_from_json(const nlohmann::json& object) {
  GenerationResult result;
  result.text = object.at("text").get<std::string>();
  result.usage.prompt_tokens = object.at("usage").at("prompt_tokens").get<std::int64_t>();
  result.usage.completion_tokens = object.at("usage").at("completion_tokens").get<std::int64_t>();
  result.backend = object.value("backend", "");
  result.latency_ms = object.value("latency_ms", 0.0);
  return result;
}

nlohmann::json chat_request_body(const BackendDescriptor& backend,
                                 const GenerationRequest& request) {
  nlohmann::json body = {
      {"model", backend.model_id},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", request.prompt}}})},
      {"temperature", request.temperature},
      {"top_p", request.top_p},
      {"max_tokens", request.max_new_tokens},
      {"seed", request.seed},
  };
  if (!request.stop.empty()) body["stop"] = request.stop;
  return body;
}

GenerationResult Backend::attempt(const GenerationRequest& request) {
  const std::string body = chat_request_body(descriptor_, request).dump();
  OutboundObserver observer;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    ++attempts_;
    observer = observer_;
  }
  if (observer) observer(body);
  GenerationResult result = send(request, body);
  result.backend = descriptor_.name;
  return result;
}

void Backend::set_observer(OutboundObserver observer) {
  std::lock_guard<std::mutex> lock(mutex_);
  observer_ = std::move(observer);
}

std::int64_t Backend::attempts() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return attempts_;
}

std::unique_ptr<Backend> make_backend(const BackendDescriptor& descriptor,
                                      const MockProfile* mock) {
  validate_backend(descriptor);
  switch (descriptor.kind) {
    case BackendKind::kMock:
      if (mock == nullptr) throw config_error("invalid-backend", "mock backend needs a profile");
      return std::make_unique<MockBackend>(descriptor, *mock);
    case BackendKind::kRemoteChat:
      return std::make_unique<RemoteChatBackend>(descriptor);
    case BackendKind::kLocalProcess:
      return std::make_unique<ProcessBackend>(descriptor);
  }
  throw config_error("invalid-backend", "unsupported backend kind");
}

}  // namespace vforge
