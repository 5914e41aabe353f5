// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/gateway/cache.hpp"

#include <fstream>

#include "vforge/core/log.hpp"

namespace vforge {

ResponseCache::ResponseCache(std::filesystem::path path) : path_(std::move(path)) {
  std::unique_lock lock(mutex_);
  load_locked();
}

void ResponseCache::load_locked() {
  entries_.clear();
  std::error_code ec;
  file_seen_ = std::filesystem::exists(path_, ec);
  if (!file_seen_) return;
  std::ifstream in(path_);
  if (!in) {
    log::warn("cannot read cache " + path_.string() + "; continuing uncached");
    return;
  }
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      const auto record = nlohmann::json::parse(line);
      entries_.insert_or_assign(record.at("key").get<std::string>(),
                                result_from_json(record.at("result")));
    } catch (const std::exception&) {
      // A torn final line from an interrupted append is expected; skip it.
      log::warn("skipping unreadable cache record at " + path_.string() + ":" +
                std::to_string(line_number));
    }
  }
}

void ResponseCache::drop_if_file_vanished_locked() {
  std::error_code ec;
  if (file_seen_ && !std::filesystem::exists(path_, ec)) {
    entries_.clear();
    file_seen_ = false;
  }
}

std::optional<GenerationResult> ResponseCache::lookup(const std::string& key) {
  {
    std::shared_lock lock(mutex_);
    std::error_code ec;
    if (!file_seen_ || std::filesystem::exists(path_, ec)) {
      auto it = entries_.find(key);
      if (it == entries_.end()) return std::nullopt;
      GenerationResult hit = it->second;
      hit.cached = true;
      return hit;
    }
  }
  std::unique_lock lock(mutex_);
  drop_if_file_vanished_locked();
  return std::nullopt;
}

void ResponseCache::store(const std::string& key, const GenerationResult& result) {
  std::unique_lock lock(mutex_);
  drop_if_file_vanished_locked();
  GenerationResult stored = result;
  stored.cached = false;
  std::error_code ec;
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path(), ec);
  std::ofstream out(path_, std::ios::app);
  const nlohmann::json record = {{"key", key}, {"result", result_to_json(stored)}};
  out << record.dump() << '\n';
  out.flush();
  if (!out) {
    log::warn("cannot append to cache " + path_.string() + "; result not cached");
    return;
  }
  file_seen_ = true;
  entries_.insert_or_assign(key, std::move(stored));
}

std::size_t ResponseCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace vforge
