// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "vforge/gateway/remote_chat_backend.hpp"

#include <cstdlib>

#include "httplib.h"
#include "vforge/core/error.hpp"

namespace vforge {

ParsedUrl parse_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw config_error("invalid-endpoint", "endpoint '" + url + "' has no scheme");
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw config_error("invalid-endpoint", "unsupported scheme '" + scheme + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  ParsedUrl parsed;
  parsed.scheme_host_port = url.substr(0, path_start);
  parsed.path = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (parsed.scheme_host_port.size() <= scheme_end + 3) {
    throw config_error("invalid-endpoint", "endpoint '" + url + "' has no host");
  }
  return parsed;
}

RemoteChatBackend::RemoteChatBackend(BackendDescriptor descriptor)
    : Backend(std::move(descriptor)), url_(parse_endpoint(this->descriptor().endpoint)) {}

GenerationResult parse_chat_response(const BackendDescriptor& backend, const std::string& body) {
  nlohmann::json response;
  try {
    response = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception&) {
    throw backend_error("malformed-response", "response body is not JSON");
  }
  GenerationResult result;
  try {
    result.text = response.at(nlohmann::json::json_pointer(backend.text_path)).get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw backend_error("malformed-response", "no string at " + backend.text_path);
  }
  auto count_at = [&](const std::string& pointer) -> std::int64_t {
    const nlohmann::json::json_pointer ptr(pointer);
    if (!response.contains(ptr) || !response.at(ptr).is_number_integer()) return 0;
    return std::max<std::int64_t>(0, response.at(ptr).get<std::int64_t>());
  };
  result.usage.prompt_tokens = count_at(backend.prompt_tokens_path);
  result.usage.completion_tokens = count_at(backend.completion_tokens_path);
  return result;
}

GenerationResult RemoteChatBackend::send(const GenerationRequest& /*request*/,
                                         const std::string& body) {
  const BackendDescriptor& backend = descriptor();
  httplib::Client client(url_.scheme_host_port);
  const auto timeout_us = static_cast<std::int64_t>(backend.request_timeout_s * 1e6);
  client.set_connection_timeout(std::chrono::microseconds(timeout_us));
  client.set_read_timeout(std::chrono::microseconds(timeout_us));
  client.set_write_timeout(std::chrono::microseconds(timeout_us));

  httplib::Headers headers;
  if (!backend.auth_env.empty()) {
    const char* secret = std::getenv(backend.auth_env.c_str());
    if (secret == nullptr || *secret == '\0') {
      throw config_error("missing-auth", "environment variable " + backend.auth_env + " is not set");
    }
    headers.emplace("Authorization", std::string("Bearer ") + secret);
  }

  auto response = client.Post(url_.path, headers, body, "application/json");
  if (!response) {
    throw TransientBackendError("request failed: " + httplib::to_string(response.error()));
  }
  if (response->status == 429) throw TransientBackendError("rate limited (429)");
  if (response->status >= 500) {
    throw TransientBackendError("server error " + std::to_string(response->status));
  }
  if (response->status != 200) {
    throw backend_error("http-error", "backend returned HTTP " + std::to_string(response->status));
  }
  return parse_chat_response(backend, response->body);
}

}  // namespace vforge
