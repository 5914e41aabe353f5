// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "vforge/core/types.hpp"

namespace vforge {

// Marker the generator is instructed to put before its final answer.
inline constexpr std::string_view kAnswerMarker = "####";

// Joins question block, rationale and answer inside an adapter example.
inline constexpr std::string_view kExampleSeparator = "\n|||\n";

// Stand-in for the answer slot when extraction failed.
inline constexpr std::string_view kNoAnswer = "[no-answer]";

// Maps loose answer phrasing ("(B)", "B.", "Yes") to the canonical label.
// Throws Error(kData, "unmappable-answer") when nothing legal is found.
AnswerValue normalize_answer(std::string_view raw, TaskKind task);

// Final answer after the last "####" marker. Without a marker, the last
// sentence is scanned for a standalone legal label. nullopt means failure.
std::optional<AnswerValue> extract_final_answer(std::string_view generation,
                                                TaskKind task);

// Generation text preceding the last marker (the whole text if none).
std::string extract_rationale(std::string_view generation);

bool answers_equal(const AnswerValue& a, const AnswerValue& b, TaskKind task);

// Question block: question, then options inline as "(A) ... (B) ...", then
// context on its own line when present.
std::string render_question_block(const Problem& problem);

// h = question block ||| rationale ||| answer.
std::string concat_example(const Problem& problem, const Candidate& candidate);

}  // namespace vforge
