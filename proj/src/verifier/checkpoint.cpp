// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/verifier/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "vforge/core/error.hpp"

namespace vforge {
namespace fs = std::filesystem;

static_assert(std::endian::native == std::endian::little, "params.bin assumes a little-endian host");

namespace {

nlohmann::json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw data_error("bad-checkpoint", "missing " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw data_error("bad-checkpoint", path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  out << text;
  if (!out) throw data_error("io-error", "cannot write " + path.string());
}

}  // namespace

Checkpoint make_checkpoint(const VerifierModel& model) {
  Checkpoint checkpoint;
  checkpoint.encoder = model.config();
  checkpoint.tokenizer = model.tokenizer();
  checkpoint.params.assign(model.params().begin(), model.params().end());
  return checkpoint;
}

void save_checkpoint(const Checkpoint& checkpoint, const fs::path& dir) {
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "params.bin", std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(checkpoint.params.data()),
              static_cast<std::streamsize>(checkpoint.params.size() * sizeof(double)));
    if (!out) throw data_error("io-error", "cannot write params.bin");
  }
  write_text(dir / "vocab.json", checkpoint.tokenizer.to_json().dump() + "\n");
  nlohmann::json config = {{"encoder", checkpoint.encoder.to_json()},
                           {"vocab_size", checkpoint.tokenizer.vocab_size()},
                           {"param_count", checkpoint.params.size()},
                           {"training", checkpoint.training}};
  write_text(dir / "config.json", config.dump(2) + "\n");
  std::string lines;
  for (const MetricRecord& record : checkpoint.metrics) {
    nlohmann::json row = {{"step", record.step}, {"loss", nullptr}, {"dev_metric", nullptr}};
    if (record.loss) row["loss"] = *record.loss;
    if (record.dev_metric) row["dev_metric"] = *record.dev_metric;
    lines += row.dump() + "\n";
  }
  write_text(dir / "metrics.jsonl", lines);
}

Checkpoint load_checkpoint(const fs::path& dir) {
  Checkpoint checkpoint;
  const nlohmann::json config = read_json_file(dir / "config.json");
  try {
    checkpoint.encoder = EncoderConfig::from_json(config.at("encoder"));
    checkpoint.tokenizer = BpeTokenizer::from_json(read_json_file(dir / "vocab.json"));
    checkpoint.training = config.value("training", nlohmann::json::object());
  } catch (const nlohmann::json::exception& e) {
    throw data_error("bad-checkpoint", std::string("config.json: ") + e.what());
  }

  std::ifstream in(dir / "params.bin", std::ios::binary | std::ios::ate);
  if (!in) throw data_error("bad-checkpoint", "missing params.bin");
  const std::streamsize bytes = in.tellg();
  in.seekg(0);
  const ParamLayout layout(checkpoint.encoder, checkpoint.tokenizer.vocab_size());
  if (bytes < 0 || static_cast<std::size_t>(bytes) != layout.total * sizeof(double)) {
    throw data_error("bad-checkpoint", "params.bin holds " + std::to_string(bytes) +
                                           " bytes, expected " +
                                           std::to_string(layout.total * sizeof(double)));
  }
  checkpoint.params.resize(layout.total);
  in.read(reinterpret_cast<char*>(checkpoint.params.data()), bytes);

  std::ifstream metrics(dir / "metrics.jsonl");
  std::string line;
  while (std::getline(metrics, line)) {
    if (line.empty()) continue;
    const auto row = nlohmann::json::parse(line, nullptr, false);
    if (row.is_discarded()) continue;
    MetricRecord record;
    record.step = row.value("step", 0);
    if (row.contains("loss") && row["loss"].is_number()) record.loss = row["loss"].get<double>();
    if (row.contains("dev_metric") && row["dev_metric"].is_number()) {
      record.dev_metric = row["dev_metric"].get<double>();
    }
    checkpoint.metrics.push_back(record);
  }
  return checkpoint;
}

}  // namespace vforge
