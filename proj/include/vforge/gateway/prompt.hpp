// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "vforge/core/types.hpp"

namespace vforge {

// Generic instruction template for a task. Each ends by asking for the
// final answer on a "#### <answer>" line.
std::string default_template(TaskKind task);

// Substitutes {question}, {options} and {context}; "{{" and "}}" are literal
// braces. Absent options or context render empty. Any other placeholder
// throws Error(kConfig, "missing-placeholder"). The problem's gold answer is
// never reachable from a template.
std::string render_prompt(const Problem& problem, std::string_view prompt_template);

// Options one per line as "(A) text".
std::string render_options(const Problem& problem);

}  // namespace vforge
