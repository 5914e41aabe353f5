// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iostream>
#include <mutex>
#include <string_view>

namespace vforge::log {

inline std::mutex& sink_mutex() {
  static std::mutex mutex;
  return mutex;
}

inline void warn(std::string_view message) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  std::cerr << "[vforge] warning: " << message << '\n';
}

inline void info(std::string_view message) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  std::cerr << "[vforge] " << message << '\n';
}

}  // namespace vforge::log
