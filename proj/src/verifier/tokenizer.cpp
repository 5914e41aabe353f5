// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/verifier/tokenizer.hpp"

#include <cctype>
#include <set>

#include "vforge/core/error.hpp"

namespace vforge {
namespace {

constexpr std::string_view kEndOfWord = "</w>";

std::vector<std::string> initial_symbols(const std::string& word) {
  std::vector<std::string> symbols;
  symbols.reserve(word.size());
  for (char c : word) symbols.emplace_back(1, c);
  symbols.back() += kEndOfWord;
  return symbols;
}

void merge_in_place(std::vector<std::string>& symbols, const std::string& left,
                    const std::string& right) {
  std::vector<std::string> out;
  out.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i + 1 < symbols.size() && symbols[i] == left && symbols[i + 1] == right) {
      out.push_back(left + right);
      ++i;
    } else {
      out.push_back(std::move(symbols[i]));
    }
  }
  symbols = std::move(out);
}

}  // namespace

BpeTokenizer::BpeTokenizer() {
  add_token("[PAD]");
  add_token("[UNK]");
  add_token("[CLS]");
}

int BpeTokenizer::add_token(const std::string& token) {
  auto it = token_to_id_.find(token);
  if (it != token_to_id_.end()) return it->second;
  const int id = static_cast<int>(id_to_token_.size());
  id_to_token_.push_back(token);
  token_to_id_.emplace(token, id);
  return id;
}

std::vector<std::string> BpeTokenizer::pre_tokenize(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80) {
      current += c;
      continue;
    }
    if (!current.empty()) words.push_back(std::move(current));
    current.clear();
    if (!std::isspace(u)) words.emplace_back(1, c);
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

BpeTokenizer BpeTokenizer::train(std::span<const std::string> texts, int vocab_size) {
  std::map<std::string, long> word_freq;
  for (const std::string& text : texts) {
    for (std::string& word : pre_tokenize(text)) ++word_freq[word];
  }
  std::vector<std::pair<std::vector<std::string>, long>> words;
  std::set<std::string> alphabet;
  for (const auto& [word, freq] : word_freq) {
    words.emplace_back(initial_symbols(word), freq);
    for (const auto& symbol : words.back().first) alphabet.insert(symbol);
  }
  BpeTokenizer tokenizer;
  for (const auto& symbol : alphabet) tokenizer.add_token(symbol);

  while (tokenizer.vocab_size() < vocab_size) {
    std::map<std::pair<std::string, std::string>, long> pair_counts;
    for (const auto& [symbols, freq] : words) {
      for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
        pair_counts[{symbols[i], symbols[i + 1]}] += freq;
      }
    }
    const std::pair<std::string, std::string>* best = nullptr;
    long best_count = 1;
    for (const auto& [pair, count] : pair_counts) {
      if (count > best_count) {
        best = &pair;
        best_count = count;
      }
    }
    if (best == nullptr) break;
    const auto merge = *best;
    for (auto& entry : words) merge_in_place(entry.first, merge.first, merge.second);
    tokenizer.merge_rank_.emplace(merge, static_cast<int>(tokenizer.merges_.size()));
    tokenizer.merges_.push_back(merge);
    tokenizer.add_token(merge.first + merge.second);
  }
  return tokenizer;
}

std::vector<std::string> BpeTokenizer::apply_merges(const std::string& word) const {
  std::vector<std::string> symbols = initial_symbols(word);
  while (symbols.size() > 1) {
    int best_rank = -1;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      auto it = merge_rank_.find({symbols[i], symbols[i + 1]});
      if (it != merge_rank_.end() && (best_rank < 0 || it->second < best_rank)) {
        best_rank = it->second;
      }
    }
    if (best_rank < 0) break;
    const auto& merge = merges_[static_cast<std::size_t>(best_rank)];
    merge_in_place(symbols, merge.first, merge.second);
  }
  return symbols;
}

std::vector<int> BpeTokenizer::encode(std::string_view text) const {
  std::vector<int> ids;
  for (const std::string& word : pre_tokenize(text)) {
    for (const std::string& symbol : apply_merges(word)) {
      auto it = token_to_id_.find(symbol);
      ids.push_back(it == token_to_id_.end() ? kUnk : it->second);
    }
  }
  return ids;
}

nlohmann::json BpeTokenizer::to_json() const {
  nlohmann::json merges = nlohmann::json::array();
  for (const auto& [left, right] : merges_) merges.push_back({left, right});
  return {{"type", "bpe"}, {"vocab", id_to_token_}, {"merges", merges}};
}

BpeTokenizer BpeTokenizer::from_json(const nlohmann::json& object) {
  if (object.value("type", "") != "bpe") {
    throw data_error("bad-vocab", "vocabulary file is not a BPE tokenizer");
  }
  BpeTokenizer tokenizer;
  tokenizer.id_to_token_.clear();
  tokenizer.token_to_id_.clear();
  for (const auto& token : object.at("vocab")) tokenizer.add_token(token.get<std::string>());
  for (const auto& merge : object.at("merges")) {
    auto pair = std::make_pair(merge.at(0).get<std::string>(), merge.at(1).get<std::string>());
    tokenizer.merge_rank_.emplace(pair, static_cast<int>(tokenizer.merges_.size()));
    tokenizer.merges_.push_back(std::move(pair));
  }
  if (tokenizer.vocab_size() < 3 || tokenizer.token(kCls) != "[CLS]") {
    throw data_error("bad-vocab", "vocabulary is missing the special tokens");
  }
  return tokenizer;
}

}  // namespace vforge
