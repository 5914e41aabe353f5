// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/verifier/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "vforge/core/error.hpp"
#include "vforge/core/hash.hpp"
#include "vforge/core/log.hpp"
#include "vforge/core/random.hpp"
#include "vforge/verifier/losses.hpp"
#include "vforge/verifier/metrics.hpp"

namespace vforge {
namespace {

// A unit of loss: one example (bce), one pair, or one contrastive batch.
// members[0] is the positive for pairs and batches.
struct Group {
  std::vector<std::size_t> members;
  int label = 0;  // bce only
};

std::vector<Group> make_groups(const TrainingSet& set) {
  std::vector<Group> groups;
  const std::size_t n = set.dataset.examples.size();
  auto check = [n](std::size_t position) {
    if (position >= n) throw data_error("objective-input-mismatch", "position outside the dataset");
  };
  if (std::holds_alternative<std::monostate>(set.structure)) {
    for (std::size_t i = 0; i < n; ++i) {
      groups.push_back({{i}, set.dataset.examples[i].label ? 1 : 0});
    }
  } else if (const auto* pairs = std::get_if<std::vector<PairItem>>(&set.structure)) {
    for (const PairItem& pair : *pairs) {
      check(pair.positive);
      check(pair.negative);
      groups.push_back({{pair.positive, pair.negative}, 0});
    }
  } else {
    for (const ContrastiveBatch& batch : std::get<std::vector<ContrastiveBatch>>(set.structure)) {
      Group group;
      check(batch.positive);
      group.members.push_back(batch.positive);
      for (std::size_t neg : batch.negatives) {
        check(neg);
        group.members.push_back(neg);
      }
      if (group.members.size() < 2) throw data_error("empty-negatives", "batch without negatives");
      groups.push_back(std::move(group));
    }
  }
  return groups;
}

VerifierModel::GroupLoss group_loss(Objective objective, int label) {
  switch (objective) {
    case Objective::kBce:
      return [label](std::span<const double> logits) {
        const int labels[1] = {label};
        LossGrad out = bce_loss_from_logits(logits, labels);
        return std::make_pair(out.loss, std::move(out.grad));
      };
    case Objective::kPairwise:
      return [](std::span<const double> logits) {
        const PairLossGrad out = pairwise_loss(logits.subspan(0, 1), logits.subspan(1, 1));
        return std::make_pair(out.loss, std::vector<double>{out.grad_pos[0], out.grad_neg[0]});
      };
    case Objective::kInfonce:
      return [](std::span<const double> logits) {
        const ContrastiveLossGrad out = infonce_loss(logits[0], logits.subspan(1));
        std::vector<double> grad{out.grad_pos};
        grad.insert(grad.end(), out.grad_neg.begin(), out.grad_neg.end());
        return std::make_pair(out.loss, std::move(grad));
      };
  }
  throw config_error("unknown-objective", "unhandled objective");
}

// Fraction of (positive, negative) orderings the logits get strictly right.
double ranking_accuracy(const TrainingSet& dev, std::span<const double> logits) {
  std::size_t right = 0;
  std::size_t total = 0;
  if (const auto* pairs = std::get_if<std::vector<PairItem>>(&dev.structure)) {
    for (const PairItem& pair : *pairs) {
      ++total;
      if (logits[pair.positive] > logits[pair.negative]) ++right;
    }
  } else if (const auto* batches = std::get_if<std::vector<ContrastiveBatch>>(&dev.structure)) {
    for (const ContrastiveBatch& batch : *batches) {
      ++total;
      bool wins = true;
      for (std::size_t neg : batch.negatives) wins = wins && logits[batch.positive] > logits[neg];
      if (wins) ++right;
    }
  } else {
    for (const auto& [problem_id, positions] : dev.dataset.per_problem) {
      for (std::size_t p : positions) {
        if (!dev.dataset.examples[p].label) continue;
        for (std::size_t q : positions) {
          if (dev.dataset.examples[q].label) continue;
          ++total;
          if (logits[p] > logits[q]) ++right;
        }
      }
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(right) / static_cast<double>(total);
}

std::string resolve_metric(const TrainConfig& config) {
  if (config.early_stop_metric != "auto") return config.early_stop_metric;
  return config.objective == Objective::kBce ? "auc" : "ranking_accuracy";
}

void check_structure(const TrainingSet& set, Objective objective, const char* role) {
  if (set.natural_objective() != objective) {
    throw data_error("objective-input-mismatch",
                     std::string(role) + " input is shaped for " +
                         std::string(to_string(set.natural_objective())) + ", objective is " +
                         std::string(to_string(objective)));
  }
}

class Adam {
 public:
  Adam(std::size_t size, double lr, double weight_decay)
      : lr_(lr), weight_decay_(weight_decay), m_(size, 0.0), v_(size, 0.0) {}

  void step(std::span<double> params, std::span<const double> grad) {
    ++t_;
    const double correction1 = 1.0 - std::pow(kBeta1, t_);
    const double correction2 = 1.0 - std::pow(kBeta2, t_);
    for (std::size_t i = 0; i < params.size(); ++i) {
      m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * grad[i];
      v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * grad[i] * grad[i];
      const double m_hat = m_[i] / correction1;
      const double v_hat = v_[i] / correction2;
      params[i] -= lr_ * (m_hat / (std::sqrt(v_hat) + kEps) + weight_decay_ * params[i]);
    }
  }

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;
  double lr_;
  double weight_decay_;
  std::vector<double> m_, v_;
  int t_ = 0;
};

}  // namespace

std::string_view to_string(Objective objective) {
  switch (objective) {
    case Objective::kBce: return "bce";
    case Objective::kPairwise: return "pairwise";
    case Objective::kInfonce: return "infonce";
  }
  return "bce";
}

Objective parse_objective(std::string_view name) {
  if (name == "bce") return Objective::kBce;
  if (name == "pairwise") return Objective::kPairwise;
  if (name == "infonce") return Objective::kInfonce;
  throw config_error("unknown-objective", "objective must be bce, pairwise or infonce, got '" +
                                              std::string(name) + "'");
}

void TrainConfig::validate() const {
  auto fail = [](const std::string& why) { throw config_error("invalid-train-config", why); };
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) fail("learning_rate must be positive");
  if (batch_size <= 0) fail("batch_size must be positive");
  if (max_sequence_tokens <= 1) fail("max_sequence_tokens must exceed 1");
  if (epochs < 0) fail("epochs must be non-negative");
  if (eval_every < 0) fail("eval_every must be non-negative");
  if (grad_clip < 0.0) fail("grad_clip must be non-negative");
  if (weight_decay < 0.0) fail("weight_decay must be non-negative");
  static const char* kMetrics[] = {"auto", "auc", "ranking_accuracy", "top1"};
  if (std::find(std::begin(kMetrics), std::end(kMetrics), early_stop_metric) == std::end(kMetrics)) {
    fail("unknown early_stop_metric '" + early_stop_metric + "'");
  }
}

nlohmann::json TrainConfig::to_json() const {
  return {{"objective", to_string(objective)}, {"learning_rate", learning_rate},
          {"batch_size", batch_size},          {"max_sequence_tokens", max_sequence_tokens},
          {"epochs", epochs},                  {"seed", seed},
          {"early_stop_metric", early_stop_metric}, {"eval_every", eval_every},
          {"grad_clip", grad_clip},            {"weight_decay", weight_decay}};
}

TrainingSet TrainingSet::examples(AdapterDataset dataset) {
  return TrainingSet{std::move(dataset), std::monostate{}};
}
TrainingSet TrainingSet::pairs(AdapterDataset dataset, std::vector<PairItem> pairs) {
  return TrainingSet{std::move(dataset), std::move(pairs)};
}
TrainingSet TrainingSet::batches(AdapterDataset dataset, std::vector<ContrastiveBatch> batches) {
  return TrainingSet{std::move(dataset), std::move(batches)};
}

Objective TrainingSet::natural_objective() const {
  if (std::holds_alternative<std::monostate>(structure)) return Objective::kBce;
  if (std::holds_alternative<std::vector<PairItem>>(structure)) return Objective::kPairwise;
  return Objective::kInfonce;
}

double dev_metric_from_logits(const TrainingSet& dev, std::span<const double> logits,
                              std::string_view metric) {
  if (metric == "ranking_accuracy") return ranking_accuracy(dev, logits);
  std::vector<double> scores(logits.size());
  std::transform(logits.begin(), logits.end(), scores.begin(), sigmoid);
  const VerifierMetrics metrics = evaluate_scores(dev.dataset, scores);
  if (metric == "top1") return metrics.top1_correct_rate;
  // A single-class dev set has no AUC; fall back to thresholded accuracy.
  return metrics.auc.value_or(metrics.accuracy_at_half);
}

VerifierModel make_verifier(const AdapterDataset& train_data, EncoderConfig encoder,
                            int vocab_size, std::uint64_t seed) {
  std::vector<std::string> texts;
  texts.reserve(train_data.examples.size());
  for (const auto& example : train_data.examples) texts.push_back(example.text);
  BpeTokenizer tokenizer = BpeTokenizer::train(texts, vocab_size);
  return VerifierModel(encoder, std::move(tokenizer), mix_seed(seed, "verifier-init"));
}

TrainResult train(VerifierModel& model, const TrainingSet& train_set,
                  const std::optional<TrainingSet>& dev_set, const TrainConfig& config) {
  config.validate();
  check_structure(train_set, config.objective, "training");
  if (dev_set) check_structure(*dev_set, config.objective, "dev");
  if (model.config().max_tokens != config.max_sequence_tokens) {
    throw config_error("invalid-train-config", "model max_tokens does not match max_sequence_tokens");
  }
  const std::string metric_name = resolve_metric(config);

  const std::vector<Group> all_groups = make_groups(train_set);
  std::vector<std::vector<int>> ids(train_set.dataset.examples.size());
  {
    std::vector<char> needed(ids.size(), 0);
    for (const Group& group : all_groups) {
      for (std::size_t m : group.members) needed[m] = 1;
    }
    parallel_for(ids.size(), [&](std::size_t i) {
      if (needed[i]) ids[i] = model.encode(train_set.dataset.examples[i].text);
    });
  }
  std::vector<std::string> dev_texts;
  if (dev_set) {
    for (const auto& example : dev_set->dataset.examples) dev_texts.push_back(example.text);
  }

  TrainResult result;
  auto evaluate_dev = [&]() -> std::optional<double> {
    if (!dev_set || dev_texts.empty()) return std::nullopt;
    const std::vector<double> logits = model.logit_batch(dev_texts);
    return dev_metric_from_logits(*dev_set, logits, metric_name);
  };

  Checkpoint best = make_checkpoint(model);
  result.best_dev_metric = evaluate_dev();
  if (result.best_dev_metric) result.history.push_back({0, std::nullopt, result.best_dev_metric});

  const std::size_t param_count = model.params().size();
  Adam optimizer(param_count, config.learning_rate, config.weight_decay);
  const std::size_t batch = static_cast<std::size_t>(config.batch_size);
  std::vector<ParamBuffer> group_grads(batch, ParamBuffer(param_count));
  std::vector<double> group_losses(batch);
  ParamBuffer grad(param_count);
  std::vector<std::size_t> order(all_groups.size());
  int step = 0;

  for (int epoch = 0; epoch < config.epochs && !all_groups.empty(); ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(epoch)));
    rng.shuffle(order);
    double epoch_loss = 0.0;
    std::size_t epoch_steps = 0;

    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t count = std::min(batch, order.size() - start);
      parallel_for(count, [&](std::size_t slot) {
        std::fill(group_grads[slot].begin(), group_grads[slot].end(), 0.0);
        const Group& group = all_groups[order[start + slot]];
        std::vector<const std::vector<int>*> sequences;
        for (std::size_t m : group.members) sequences.push_back(&ids[m]);
        group_losses[slot] = model.accumulate_group_grad(
            sequences, group_loss(config.objective, group.label), group_grads[slot]);
      });

      // Reduce in slot order so the sum does not depend on thread timing.
      std::fill(grad.begin(), grad.end(), 0.0);
      double loss = 0.0;
      const double scale = 1.0 / static_cast<double>(count);
      for (std::size_t slot = 0; slot < count; ++slot) {
        loss += group_losses[slot] * scale;
        const ParamBuffer& g = group_grads[slot];
        for (std::size_t i = 0; i < param_count; ++i) grad[i] += g[i] * scale;
      }
      double norm_sq = 0.0;
      for (double g : grad) norm_sq += g * g;
      ++step;
      if (!std::isfinite(loss) || !std::isfinite(norm_sq)) {
        std::ostringstream why;
        why << "loss " << loss << ", squared gradient norm " << norm_sq << " at step " << step
            << " (epoch " << epoch << ", learning rate " << config.learning_rate << ")";
        throw Error(ErrorKind::kDivergence, "non-finite-loss", why.str());
      }
      const double norm = std::sqrt(norm_sq);
      if (config.grad_clip > 0.0 && norm > config.grad_clip) {
        const double shrink = config.grad_clip / norm;
        for (double& g : grad) g *= shrink;
      }
      optimizer.step(model.params(), grad);
      epoch_loss += loss;
      ++epoch_steps;

      MetricRecord record{step, loss, std::nullopt};
      const bool epoch_end = start + batch >= order.size();
      const bool due = config.eval_every > 0 ? step % config.eval_every == 0 : epoch_end;
      if (due) {
        record.dev_metric = evaluate_dev();
        if (record.dev_metric &&
            (!result.best_dev_metric || *record.dev_metric > *result.best_dev_metric)) {
          result.best_dev_metric = record.dev_metric;
          result.best_step = step;
          best = make_checkpoint(model);
        }
      }
      result.history.push_back(record);
    }
    if (config.verbose) {
      std::ostringstream line;
      line << "epoch " << epoch + 1 << "/" << config.epochs << " mean loss "
           << epoch_loss / static_cast<double>(std::max<std::size_t>(epoch_steps, 1));
      if (result.best_dev_metric) line << ", best dev " << metric_name << " " << *result.best_dev_metric;
      log::info(line.str());
    }
  }

  if (!dev_set) {
    best = make_checkpoint(model);
    result.best_step = step;
  }
  best.metrics = result.history;
  best.training = config.to_json();
  best.training["dev_metric_name"] = metric_name;
  best.training["best_step"] = result.best_step;
  best.training["best_dev_metric"] =
      result.best_dev_metric ? nlohmann::json(*result.best_dev_metric) : nlohmann::json(nullptr);
  result.checkpoint = std::move(best);
  return result;
}

}  // namespace vforge
