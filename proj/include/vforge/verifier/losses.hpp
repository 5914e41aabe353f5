// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

namespace vforge {

// log(sigmoid(x)) without overflow for large |x|.
double log_sigmoid(double x);
double sigmoid(double x);

// Mean of -[z log V + (1 - z) log(1 - V)] over probabilities V in (0, 1).
// Throws Error(kData, "length-mismatch").
double bce_loss(std::span<const double> scores, std::span<const int> labels);

struct LossGrad {
  double loss = 0.0;
  std::vector<double> grad;  // d loss / d logit, one per input logit
};

// bce_loss on sigmoid(logits), evaluated through log_sigmoid.
LossGrad bce_loss_from_logits(std::span<const double> logits, std::span<const int> labels);

struct PairLossGrad {
  double loss = 0.0;
  std::vector<double> grad_pos;
  std::vector<double> grad_neg;
};

// Mean of -log sigmoid(r+ - r-) over aligned logit pairs.
PairLossGrad pairwise_loss(std::span<const double> pos_logits, std::span<const double> neg_logits);

struct ContrastiveLossGrad {
  double loss = 0.0;
  double grad_pos = 0.0;
  std::vector<double> grad_neg;
};

// Softmax cross-entropy of the positive against itself plus all negatives:
// -log(exp(r+) / (exp(r+) + sum exp(r-))). Throws Error(kData, "empty-negatives").
ContrastiveLossGrad infonce_loss(double pos_logit, std::span<const double> neg_logits);

}  // namespace vforge
