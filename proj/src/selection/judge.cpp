// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/selection/judge.hpp"

namespace vforge {

std::string_view to_string(Judgement judgement) {
  switch (judgement) {
    case Judgement::kWin: return "win";
    case Judgement::kTie: return "tie";
    case Judgement::kLose: return "lose";
  }
  return "lose";
}

Judgement win_tie_lose(long c1, long c2, double s1, double s2) {
  if (c1 == c2) return Judgement::kTie;
  if ((c1 > c2 && s1 > s2) || (c1 < c2 && s1 < s2)) return Judgement::kWin;
  return Judgement::kLose;
}

}  // namespace vforge
