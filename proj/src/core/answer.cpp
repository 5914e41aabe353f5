// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/core/answer.hpp"

#include <array>
#include <cctype>

#include "vforge/core/error.hpp"

namespace vforge {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_leading_junk(char c) {
  return is_space(c) || c == '(' || c == '[' || c == '*' || c == '"' || c == '\'' ||
         c == ':' || c == '-' || c == '{' || c == '<';
}

std::string_view strip_leading_junk(std::string_view s) {
  while (!s.empty() && is_leading_junk(s.front())) s.remove_prefix(1);
  return s;
}

// "Answer: B", "The answer is (B)", "Option B" all reduce to "B...".
std::string_view strip_answer_prefixes(std::string_view s) {
  static constexpr std::array<std::string_view, 5> kPrefixes = {
      "the answer is", "answer is", "answer", "option", "choice"};
  bool changed = true;
  while (changed) {
    changed = false;
    s = strip_leading_junk(s);
    const std::string head = lower(s.substr(0, 16));
    for (std::string_view prefix : kPrefixes) {
      if (head.starts_with(prefix) &&
          (s.size() == prefix.size() || !is_alpha(s[prefix.size()]))) {
        s.remove_prefix(prefix.size());
        changed = true;
        break;
      }
    }
  }
  return s;
}

std::optional<AnswerValue> try_normalize(std::string_view raw, TaskKind task) {
  std::string_view s = strip_answer_prefixes(trim(raw));
  if (s.empty()) return std::nullopt;
  if (task == TaskKind::kMultipleChoice) {
    if (!is_alpha(s[0])) return std::nullopt;
    if (s.size() > 1 && is_alnum(s[1])) return std::nullopt;
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return AnswerValue{std::string(1, letter)};
  }
  std::size_t n = 0;
  while (n < s.size() && (is_alpha(s[n]) || s[n] == '_')) ++n;
  const std::string word = lower(s.substr(0, n));
  if (!is_legal_label(task, word)) return std::nullopt;
  return AnswerValue{word};
}

std::string_view final_sentence(std::string_view text) {
  text = trim(text);
  while (!text.empty() && (text.back() == '.' || text.back() == '!' || text.back() == '?')) {
    text.remove_suffix(1);
  }
  for (std::size_t i = text.size(); i > 0; --i) {
    const char c = text[i - 1];
    if (c == '\n') return trim(text.substr(i));
    if ((c == '.' || c == '!' || c == '?') && i < text.size() && is_space(text[i])) {
      return trim(text.substr(i));
    }
  }
  return text;
}

std::optional<AnswerValue> scan_sentence(std::string_view sentence, TaskKind task) {
  if (task == TaskKind::kMultipleChoice) {
    // Parenthesized letters are unambiguous; prefer the last one.
    for (std::size_t i = sentence.size(); i >= 3; --i) {
      if (sentence[i - 1] == ')' && sentence[i - 3] == '(' && std::isupper(static_cast<unsigned char>(sentence[i - 2]))) {
        return AnswerValue{std::string(1, sentence[i - 2])};
      }
    }
    // A bare capital letter at position 0 is usually the article "A".
    for (std::size_t i = sentence.size(); i-- > 1;) {
      const char c = sentence[i];
      if (!std::isupper(static_cast<unsigned char>(c))) continue;
      const bool left_ok = !is_alnum(sentence[i - 1]);
      const bool right_ok = i + 1 == sentence.size() || !is_alnum(sentence[i + 1]);
      if (left_ok && right_ok) return AnswerValue{std::string(1, c)};
    }
    return std::nullopt;
  }
  std::optional<AnswerValue> found;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && !is_alpha(sentence[i])) ++i;
    std::size_t j = i;
    while (j < sentence.size() && (is_alpha(sentence[j]) || sentence[j] == '_')) ++j;
    if (j > i) {
      const std::string word = lower(sentence.substr(i, j - i));
      if (is_legal_label(task, word)) found = AnswerValue{word};
    }
    i = j;
  }
  return found;
}

std::string sanitize_part(std::string_view part) {
  std::string out(part);
  std::size_t pos = 0;
  while ((pos = out.find("|||", pos)) != std::string::npos) {
    out.replace(pos, 3, "| | |");
    pos += 5;
  }
  return out;
}

}  // namespace

AnswerValue normalize_answer(std::string_view raw, TaskKind task) {
  if (trim(raw).empty()) {
    throw data_error("unmappable-answer", "empty answer");
  }
  auto value = try_normalize(raw, task);
  if (!value || !is_legal_label(task, value->canonical)) {
    throw data_error("unmappable-answer",
                     "'" + std::string(raw.substr(0, 64)) + "' is not a legal " +
                         std::string(to_string(task)) + " answer");
  }
  return *value;
}

std::optional<AnswerValue> extract_final_answer(std::string_view generation, TaskKind task) {
  const std::size_t marker = generation.rfind(kAnswerMarker);
  if (marker != std::string_view::npos) {
    return try_normalize(generation.substr(marker + kAnswerMarker.size()), task);
  }
  return scan_sentence(final_sentence(generation), task);
}

std::string extract_rationale(std::string_view generation) {
  const std::size_t marker = generation.rfind(kAnswerMarker);
  if (marker == std::string_view::npos) return std::string(trim(generation));
  return std::string(trim(generation.substr(0, marker)));
}

bool answers_equal(const AnswerValue& a, const AnswerValue& b, TaskKind /*task*/) {
  return a.canonical == b.canonical;
}

std::string render_question_block(const Problem& problem) {
  std::string out = problem.question;
  for (const Option& option : problem.options) {
    out += " (" + option.letter + ") " + option.text;
  }
  if (problem.context && !problem.context->empty()) {
    out += "\n" + *problem.context;
  }
  return out;
}

std::string concat_example(const Problem& problem, const Candidate& candidate) {
  std::string out = sanitize_part(render_question_block(problem));
  out += kExampleSeparator;
  out += sanitize_part(candidate.rationale);
  out += kExampleSeparator;
  out += candidate.answer ? candidate.answer->canonical : std::string(kNoAnswer);
  return out;
}

}  // namespace vforge
