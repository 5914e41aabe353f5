// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

namespace vforge {

// Byte-pair-encoding subword tokenizer learned from the training texts.
// Words are runs of alphanumerics; every other visible character is its own
// word. Whitespace only separates.
class BpeTokenizer {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kCls = 2;

  BpeTokenizer();

  // Learns merges until the vocabulary reaches `vocab_size` or no pair
  // occurs at least twice.
  static BpeTokenizer train(std::span<const std::string> texts, int vocab_size);

  std::vector<int> encode(std::string_view text) const;
  std::string token(int id) const { return id_to_token_.at(static_cast<std::size_t>(id)); }
  int vocab_size() const { return static_cast<int>(id_to_token_.size()); }

  nlohmann::json to_json() const;
  static BpeTokenizer from_json(const nlohmann::json& object);

  static std::vector<std::string> pre_tokenize(std::string_view text);

 private:
  int add_token(const std::string& token);
  std::vector<std::string> apply_merges(const std::string& word) const;

  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, int> token_to_id_;
  std::vector<std::pair<std::string, std::string>> merges_;
  std::map<std::pair<std::string, std::string>, int> merge_rank_;
};

}  // namespace vforge
