// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "vforge/selection/cost.hpp"

namespace vforge {

// One line of manifest.jsonl, written once per command invocation.
struct ManifestRecord {
  std::string run_id;
  std::string command;
  std::string started_at;   // UTC, ISO 8601
  std::string finished_at;
  nlohmann::json config = nlohmann::json::object();
  std::map<std::string, std::string> input_hashes;  // path -> SHA-256
  std::vector<std::string> artifacts;
  std::map<std::string, double> timings_s;
  nlohmann::json shortfall = nlohmann::json::object();
  std::vector<PhaseUsage> billed;  // tokens actually requested from a backend
  std::vector<PhaseUsage> total;   // tokens behind every returned result, cached or not
  nlohmann::json details = nlohmann::json::object();

  nlohmann::json to_json() const;
  static ManifestRecord from_json(const nlohmann::json& object);
};

// Appends one record; earlier lines are never rewritten.
void append_manifest(const std::filesystem::path& path, const ManifestRecord& record);
std::vector<ManifestRecord> read_manifest(const std::filesystem::path& path);

std::string utc_timestamp(std::chrono::system_clock::time_point when = std::chrono::system_clock::now());

// Stable id derived from command, config and inputs, suffixed with the start
// time so repeated invocations stay distinguishable.
std::string make_run_id(const std::string& command, const nlohmann::json& config,
                        const std::map<std::string, std::string>& input_hashes,
                        const std::string& started_at);

}  // namespace vforge
