// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/runner/manifest.hpp"

#include <ctime>
#include <fstream>

#include "vforge/core/error.hpp"
#include "vforge/core/hash.hpp"
#include "vforge/core/jsonl.hpp"

namespace vforge {
namespace fs = std::filesystem;

nlohmann::json ManifestRecord::to_json() const {
  nlohmann::json billed_rows = nlohmann::json::array();
  for (const PhaseUsage& usage : billed) billed_rows.push_back(usage.to_json());
  nlohmann::json total_rows = nlohmann::json::array();
  for (const PhaseUsage& usage : total) total_rows.push_back(usage.to_json());
  return {{"run_id", run_id},
          {"command", command},
          {"started_at", started_at},
          {"finished_at", finished_at},
          {"config", config},
          {"input_hashes", input_hashes},
          {"artifacts", artifacts},
          {"timings_s", timings_s},
          {"shortfall", shortfall},
          {"usage", billed_rows},
          {"usage_total", total_rows},
          {"details", details}};
}

ManifestRecord ManifestRecord::from_json(const nlohmann::json& object) {
  ManifestRecord record;
  record.run_id = object.value("run_id", "");
  record.command = object.value("command", "");
  record.started_at = object.value("started_at", "");
  record.finished_at = object.value("finished_at", "");
  record.config = object.value("config", nlohmann::json::object());
  record.input_hashes = object.value("input_hashes", std::map<std::string, std::string>{});
  record.artifacts = object.value("artifacts", std::vector<std::string>{});
  record.timings_s = object.value("timings_s", std::map<std::string, double>{});
  record.shortfall = object.value("shortfall", nlohmann::json::object());
  for (const auto& row : object.value("usage", nlohmann::json::array())) {
    record.billed.push_back(PhaseUsage::from_json(row));
  }
  for (const auto& row : object.value("usage_total", nlohmann::json::array())) {
    record.total.push_back(PhaseUsage::from_json(row));
  }
  record.details = object.value("details", nlohmann::json::object());
  return record;
}

void append_manifest(const fs::path& path, const ManifestRecord& record) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::app);
  out << record.to_json().dump() << '\n';
  out.flush();
  if (!out) throw data_error("io-error", "cannot append to " + path.string());
}

std::vector<ManifestRecord> read_manifest(const fs::path& path) {
  if (!fs::exists(path)) throw data_error("missing-manifest", "no manifest at " + path.string());
  std::vector<ManifestRecord> records;
  for_each_jsonl(path, [&](const nlohmann::json& object, std::size_t) {
    records.push_back(ManifestRecord::from_json(object));
  });
  return records;
}

std::string utc_timestamp(std::chrono::system_clock::time_point when) {
  const std::time_t seconds = std::chrono::system_clock::to_time_t(when);
  std::tm parts{};
  gmtime_r(&seconds, &parts);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &parts);
  return buffer;
}

std::string make_run_id(const std::string& command, const nlohmann::json& config,
                        const std::map<std::string, std::string>& input_hashes,
                        const std::string& started_at) {
  const nlohmann::json key = {command, config, input_hashes};
  std::string compact_time;
  for (char c : started_at) {
    if (std::isdigit(static_cast<unsigned char>(c))) compact_time.push_back(c);
  }
  return sha256_hex(key.dump()).substr(0, 12) + "-" + compact_time;
}

}  // namespace vforge
