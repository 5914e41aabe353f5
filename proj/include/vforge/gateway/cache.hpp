// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "vforge/gateway/backend.hpp"

namespace vforge {

// Append-only JSONL store of {"key", "result"} records. Readers share a lock;
// appends are serialized. If the backing file disappears the in-memory
// index is dropped so later lookups miss. I/O failures never throw: they
// log a warning and the caller proceeds uncached.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path path);

  std::optional<GenerationResult> lookup(const std::string& key);
  void store(const std::string& key, const GenerationResult& result);

  std::size_t size() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  void load_locked();
  void drop_if_file_vanished_locked();

  std::filesystem::path path_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, GenerationResult> entries_;
  bool file_seen_ = false;
};

}  // namespace vforge
