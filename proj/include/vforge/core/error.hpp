// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace vforge {

// Values double as process exit codes for the CLI.
enum class ErrorKind : int {
  kConfig = 2,
  kData = 3,
  kBackend = 4,
  kDivergence = 5,
};

// All recoverable failures in the toolkit are reported through this type.
// `code` is a short stable identifier ("unmappable-answer", "length-mismatch")
// that tests and callers can match on without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& code() const { return code_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
  std::string code_;
};

inline Error config_error(std::string code, const std::string& message) {
  return Error(ErrorKind::kConfig, std::move(code), message);
}
inline Error data_error(std::string code, const std::string& message) {
  return Error(ErrorKind::kData, std::move(code), message);
}
inline Error backend_error(std::string code, const std::string& message) {
  return Error(ErrorKind::kBackend, std::move(code), message);
}

}  // namespace vforge
