// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

namespace vforge {

enum class Judgement { kWin, kTie, kLose };

std::string_view to_string(Judgement judgement);

// Compares human-rater preference counts (c1, c2) for two candidates with
// the verifier's scores (s1, s2). Equal counts are a tie whatever the
// scores. Otherwise the verifier wins only when it orders the pair the same
// way strictly; equal scores with unequal counts lose.
Judgement win_tie_lose(long c1, long c2, double s1, double s2);

}  // namespace vforge
