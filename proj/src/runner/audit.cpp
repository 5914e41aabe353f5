// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/runner/audit.hpp"

#include "vforge/gateway/prompt.hpp"

namespace vforge {
namespace {

// Shorter reference solutions are too likely to occur by chance.
constexpr std::size_t kMinSolutionChars = 16;

}  // namespace

Problem scrub_answers(const Problem& problem) {
  Problem scrubbed = problem;
  scrubbed.gold = AnswerValue{};
  scrubbed.solution.reset();
  scrubbed.extra = nlohmann::json::object();
  return scrubbed;
}

PrivacyAudit::PrivacyAudit(const std::vector<Problem>& problems, const std::string& prompt_template) {
  for (const Problem& problem : problems) {
    const std::string& tmpl = prompt_template.empty() ? default_template(problem.task) : prompt_template;
    allowed_prompts_.insert(render_prompt(scrub_answers(problem), tmpl));
    if (problem.solution && problem.solution->size() >= kMinSolutionChars) {
      solutions_.push_back(*problem.solution);
    }
  }
}

void PrivacyAudit::observe(const std::string& body) {
  std::string finding;
  const auto parsed = nlohmann::json::parse(body, nullptr, false);
  std::string prompt;
  if (parsed.is_discarded() || !parsed.contains("messages") || !parsed["messages"].is_array()) {
    finding = "unparseable request body";
  } else {
    for (const auto& message : parsed["messages"]) {
      if (message.contains("content") && message["content"].is_string()) {
        prompt += message["content"].get<std::string>();
      }
    }
    if (!allowed_prompts_.contains(prompt)) finding = "prompt differs from its answer-free rendering";
  }
  for (const std::string& solution : solutions_) {
    if (finding.empty() && body.find(solution) != std::string::npos) {
      finding = "reference solution present in request";
    }
  }
  std::lock_guard<std::mutex> lock(mutex_);
  ++requests_;
  if (!finding.empty()) findings_.push_back(finding + ": " + body.substr(0, 160));
}

OutboundObserver PrivacyAudit::observer() {
  return [this](const std::string& body) { observe(body); };
}

std::size_t PrivacyAudit::requests() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return requests_;
}

std::size_t PrivacyAudit::leaks() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return findings_.size();
}

std::vector<std::string> PrivacyAudit::findings() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return findings_;
}

nlohmann::json PrivacyAudit::summary() const {
  std::lock_guard<std::mutex> lock(mutex_);
  nlohmann::json out = {{"requests", requests_}, {"leaks", findings_.size()}};
  if (!findings_.empty()) out["first_finding"] = findings_.front();
  return out;
}

}  // namespace vforge
