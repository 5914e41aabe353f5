// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/core/jsonl.hpp"

#include <fstream>
#include <set>

#include "vforge/core/answer.hpp"
#include "vforge/core/error.hpp"

namespace vforge {
namespace {

const std::set<std::string> kProblemFields = {"id", "task", "question", "options", "gold", "context", "solution"};
const std::set<std::string> kCandidateFields = {"problem_id", "index", "raw", "rationale",
                                                "answer", "label", "usage"};

json extras_of(const json& object, const std::set<std::string>& known) {
  json extra = json::object();
  for (auto it = object.begin(); it != object.end(); ++it) {
    if (!known.contains(it.key())) extra[it.key()] = it.value();
  }
  return extra;
}

template <typename T>
T required(const json& object, const char* field) {
  if (!object.contains(field)) {
    throw data_error("missing-field", std::string("missing field '") + field + "'");
  }
  try {
    return object.at(field).get<T>();
  } catch (const json::exception&) {
    throw data_error("bad-field", std::string("field '") + field + "' has the wrong type");
  }
}

}  // namespace

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const json&, std::size_t)>& visit) {
  std::ifstream in(path);
  if (!in) throw data_error("missing-file", "cannot open " + path.string());
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_number);
    json object;
    try {
      object = json::parse(line);
    } catch (const json::parse_error& e) {
      throw data_error("malformed-jsonl", where + ": invalid JSON (" + e.what() + ")");
    }
    if (!object.is_object()) {
      throw data_error("malformed-jsonl", where + ": expected a JSON object");
    }
    try {
      visit(object, line_number);
    } catch (const Error& e) {
      throw Error(e.kind(), e.code(), where + ": " + e.what());
    }
  }
}

void write_jsonl(const std::filesystem::path& path, const std::vector<json>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw data_error("write-failed", "cannot write " + tmp.string());
    for (const json& row : rows) out << row.dump() << '\n';
    if (!out) throw data_error("write-failed", "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

json problem_to_json(const Problem& problem) {
  json object = problem.extra;
  object["id"] = problem.id;
  object["task"] = std::string(to_string(problem.task));
  object["question"] = problem.question;
  json options = json::array();
  for (const Option& option : problem.options) options.push_back({option.letter, option.text});
  object["options"] = options;
  object["gold"] = problem.gold.canonical;
  if (problem.context) object["context"] = *problem.context;
  if (problem.solution) object["solution"] = *problem.solution;
  return object;
}

Problem problem_from_json(const json& object) {
  Problem problem;
  problem.id = required<std::string>(object, "id");
  problem.task = parse_task_kind(required<std::string>(object, "task"));
  problem.question = required<std::string>(object, "question");
  if (object.contains("options") && !object.at("options").is_null()) {
    for (const json& entry : object.at("options")) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() || !entry[1].is_string()) {
        throw data_error("bad-field", "options must be [letter, text] pairs");
      }
      problem.options.push_back({entry[0].get<std::string>(), entry[1].get<std::string>()});
    }
  }
  problem.gold = normalize_answer(required<std::string>(object, "gold"), problem.task);
  if (object.contains("context") && object.at("context").is_string()) {
    problem.context = object.at("context").get<std::string>();
  }
  if (object.contains("solution") && object.at("solution").is_string()) {
    problem.solution = object.at("solution").get<std::string>();
  }
  problem.extra = extras_of(object, kProblemFields);
  validate_problem(problem);
  return problem;
}

json candidate_to_json(const Candidate& candidate) {
  json object = candidate.extra;
  object["problem_id"] = candidate.problem_id;
  object["index"] = candidate.index;
  object["raw"] = candidate.raw;
  object["rationale"] = candidate.rationale;
  object["answer"] = candidate.answer ? json(candidate.answer->canonical) : json(nullptr);
  if (candidate.label) object["label"] = *candidate.label ? 1 : 0;
  object["usage"] = {{"prompt_tokens", candidate.usage.prompt_tokens},
                     {"completion_tokens", candidate.usage.completion_tokens}};
  return object;
}

Candidate candidate_from_json(const json& object) {
  Candidate candidate;
  candidate.problem_id = required<std::string>(object, "problem_id");
  candidate.index = required<int>(object, "index");
  if (candidate.index < 1) throw data_error("bad-field", "candidate index must be >= 1");
  candidate.raw = required<std::string>(object, "raw");
  candidate.rationale = required<std::string>(object, "rationale");
  if (object.contains("answer") && object.at("answer").is_string()) {
    candidate.answer = AnswerValue{object.at("answer").get<std::string>()};
  }
  if (object.contains("label") && !object.at("label").is_null()) {
    const json& label = object.at("label");
    candidate.label = label.is_boolean() ? label.get<bool>() : label.get<int>() != 0;
  }
  if (object.contains("usage")) {
    const json& usage = object.at("usage");
    candidate.usage.prompt_tokens = usage.value("prompt_tokens", std::int64_t{0});
    candidate.usage.completion_tokens = usage.value("completion_tokens", std::int64_t{0});
  }
  candidate.extra = extras_of(object, kCandidateFields);
  return candidate;
}

std::vector<Problem> read_problems(const std::filesystem::path& path) {
  std::vector<Problem> problems;
  std::set<std::string> seen;
  for_each_jsonl(path, [&](const json& object, std::size_t) {
    Problem problem = problem_from_json(object);
    if (!seen.insert(problem.id).second) {
      throw data_error("duplicate-id", "duplicate problem id '" + problem.id + "'");
    }
    problems.push_back(std::move(problem));
  });
  return problems;
}

void write_problems(const std::filesystem::path& path, const std::vector<Problem>& problems) {
  std::vector<json> rows;
  rows.reserve(problems.size());
  for (const Problem& problem : problems) rows.push_back(problem_to_json(problem));
  write_jsonl(path, rows);
}

std::vector<Candidate> read_candidates(const std::filesystem::path& path) {
  std::vector<Candidate> candidates;
  for_each_jsonl(path, [&](const json& object, std::size_t) {
    candidates.push_back(candidate_from_json(object));
  });
  return candidates;
}

void write_candidates(const std::filesystem::path& path,
                      const std::vector<Candidate>& candidates) {
  std::vector<json> rows;
  rows.reserve(candidates.size());
  for (const Candidate& candidate : candidates) rows.push_back(candidate_to_json(candidate));
  write_jsonl(path, rows);
}

}  // namespace vforge
