// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/verifier/losses.hpp"

#include <algorithm>
#include <cmath>

#include "vforge/core/error.hpp"

namespace vforge {
namespace {

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    throw data_error("length-mismatch", "loss inputs differ in length (" + std::to_string(a) +
                                            " vs " + std::to_string(b) + ")");
  }
  if (a == 0) throw data_error("length-mismatch", "loss inputs are empty");
}

}  // namespace

double log_sigmoid(double x) {
  // log sigmoid(x) = -softplus(-x)
  return std::min(x, 0.0) - std::log1p(std::exp(-std::abs(x)));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double bce_loss(std::span<const double> scores, std::span<const int> labels) {
  require_same_length(scores.size(), labels.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    total -= labels[i] != 0 ? std::log(scores[i]) : std::log1p(-scores[i]);
  }
  return total / static_cast<double>(scores.size());
}

LossGrad bce_loss_from_logits(std::span<const double> logits, std::span<const int> labels) {
  require_same_length(logits.size(), labels.size());
  const double n = static_cast<double>(logits.size());
  LossGrad out;
  out.grad.resize(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const double x = logits[i];
    const bool z = labels[i] != 0;
    // log(1 - sigmoid(x)) = log_sigmoid(-x)
    out.loss -= z ? log_sigmoid(x) : log_sigmoid(-x);
    out.grad[i] = (sigmoid(x) - (z ? 1.0 : 0.0)) / n;
  }
  out.loss /= n;
  return out;
}

PairLossGrad pairwise_loss(std::span<const double> pos_logits, std::span<const double> neg_logits) {
  require_same_length(pos_logits.size(), neg_logits.size());
  const double n = static_cast<double>(pos_logits.size());
  PairLossGrad out;
  out.grad_pos.resize(pos_logits.size());
  out.grad_neg.resize(pos_logits.size());
  for (std::size_t i = 0; i < pos_logits.size(); ++i) {
    const double margin = pos_logits[i] - neg_logits[i];
    out.loss -= log_sigmoid(margin);
    // d/dm [-log sigmoid(m)] = -(1 - sigmoid(m)) = -sigmoid(-m)
    const double g = -sigmoid(-margin) / n;
    out.grad_pos[i] = g;
    out.grad_neg[i] = -g;
  }
  out.loss /= n;
  return out;
}

ContrastiveLossGrad infonce_loss(double pos_logit, std::span<const double> neg_logits) {
  if (neg_logits.empty()) {
    throw data_error("empty-negatives", "InfoNCE needs at least one negative");
  }
  double peak = pos_logit;
  for (double r : neg_logits) peak = std::max(peak, r);
  double denom = std::exp(pos_logit - peak);
  for (double r : neg_logits) denom += std::exp(r - peak);
  const double log_z = peak + std::log(denom);
  ContrastiveLossGrad out;
  out.loss = log_z - pos_logit;
  out.grad_pos = std::exp(pos_logit - log_z) - 1.0;
  out.grad_neg.resize(neg_logits.size());
  for (std::size_t i = 0; i < neg_logits.size(); ++i) {
    out.grad_neg[i] = std::exp(neg_logits[i] - log_z);
  }
  return out;
}

}  // namespace vforge
