// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/gateway/prompt.hpp"

#include "vforge/core/error.hpp"

namespace vforge {

std::string default_template(TaskKind task) {
  std::string answer_hint;
  switch (task) {
    case TaskKind::kMultipleChoice:
      answer_hint = "the letter of the correct option";
      break;
    case TaskKind::kYesNoMaybe:
      answer_hint = "yes, no, or maybe";
      break;
    case TaskKind::kYesNo:
      answer_hint = "yes or no";
      break;
    case TaskKind::kNli3Way:
      answer_hint = "entailment, neutral, or contradiction";
      break;
    case TaskKind::kBinaryEntailment:
      answer_hint = "true or false";
      break;
    case TaskKind::kFact4Way:
      answer_hint = "true, false, mixture, or unproven";
      break;
  }
  return "{context}\n"
         "Question: {question}\n"
         "{options}\n"
         "Think through the problem step by step, then finish with a final line of "
         "the form \"#### <answer>\" where <answer> is " +
         answer_hint + ".\n";
}

std::string render_options(const Problem& problem) {
  std::string out;
  for (const Option& option : problem.options) {
    if (!out.empty()) out += '\n';
    out += "(" + option.letter + ") " + option.text;
  }
  return out;
}

std::string render_prompt(const Problem& problem, std::string_view prompt_template) {
  std::string out;
  out.reserve(prompt_template.size() + problem.question.size() + 256);
  std::size_t i = 0;
  while (i < prompt_template.size()) {
    const char c = prompt_template[i];
    if (c == '{' && i + 1 < prompt_template.size() && prompt_template[i + 1] == '{') {
      out += '{';
      i += 2;
      continue;
    }
    if (c == '}' && i + 1 < prompt_template.size() && prompt_template[i + 1] == '}') {
      out += '}';
      i += 2;
      continue;
    }
    if (c != '{') {
      out += c;
      ++i;
      continue;
    }
    const std::size_t close = prompt_template.find('}', i);
    if (close == std::string_view::npos) {
      throw config_error("missing-placeholder", "unterminated placeholder in prompt template");
    }
    const std::string_view name = prompt_template.substr(i + 1, close - i - 1);
    if (name == "question") {
      out += problem.question;
    } else if (name == "options") {
      out += render_options(problem);
    } else if (name == "context") {
      if (problem.context) out += *problem.context;
    } else {
      throw config_error("missing-placeholder",
                         "prompt template references unknown field {" + std::string(name) + "}");
    }
    i = close + 1;
  }
  return out;
}

}  // namespace vforge
