// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vforge/core/types.hpp"

namespace vforge {

using json = nlohmann::json;

// Calls `visit(object, line_number)` for every non-blank line. Parse errors
// and errors thrown by `visit` are rethrown as Error(kData) prefixed with
// "<path>:<line>".
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const json&, std::size_t)>& visit);

// Writes one compact object per line, replacing the file atomically.
void write_jsonl(const std::filesystem::path& path, const std::vector<json>& rows);

json problem_to_json(const Problem& problem);
Problem problem_from_json(const json& object);
json candidate_to_json(const Candidate& candidate);
Candidate candidate_from_json(const json& object);

std::vector<Problem> read_problems(const std::filesystem::path& path);
void write_problems(const std::filesystem::path& path, const std::vector<Problem>& problems);
std::vector<Candidate> read_candidates(const std::filesystem::path& path);
void write_candidates(const std::filesystem::path& path,
                      const std::vector<Candidate>& candidates);

}  // namespace vforge
